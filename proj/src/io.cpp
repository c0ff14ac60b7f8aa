#include "sia/io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sia {

using nlohmann::json;

namespace {

/// Shortest decimal string that parses back to the same double.
std::string double_repr(double v) { return json(v).dump(); }

json one_based(const std::vector<int>& zero_based) {
  json out = json::array();
  for (int i : zero_based) out.push_back(i + 1);
  return out;
}

}  // namespace

json matrix_to_json(const StochasticMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"n", m.dim()}, {"rows", std::move(rows)}};
}

StochasticMatrix matrix_from_json(const json& j, double row_sum_tol) {
  if (!j.is_object() || !j.contains("n") || !j.contains("rows")) {
    throw ParseError("matrix JSON must be an object with \"n\" and \"rows\"");
  }
  if (!j["n"].is_number_integer() || j["n"].get<int>() < 1) {
    throw ParseError("\"n\" must be a positive integer");
  }
  const int n = j["n"].get<int>();
  const json& rows = j["rows"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw ParseError("\"rows\" must be an array of " + std::to_string(n) + " rows");
  }
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError("row " + std::to_string(i + 1) + ": expected " + std::to_string(n) +
                       " entries");
    }
    for (int k = 0; k < n; ++k) {
      const json& cell = row[static_cast<std::size_t>(k)];
      if (!cell.is_number()) {
        throw ParseError("row " + std::to_string(i + 1) + ", entry " + std::to_string(k + 1) +
                         ": not a number");
      }
      entries.push_back(cell.get<double>());
    }
  }
  return StochasticMatrix(n, std::move(entries), row_sum_tol);
}

std::string matrix_to_csv(const StochasticMatrix& m) {
  std::string out;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      if (j > 0) out += ',';
      out += double_repr(m(i, j));
    }
    out += '\n';
  }
  return out;
}

StochasticMatrix matrix_from_csv(const std::string& text, double row_sum_tol) {
  std::vector<std::vector<double>> rows;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      errno = 0;
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      while (end != nullptr && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
      if (end == cell.c_str() || (end != nullptr && *end != '\0') || errno == ERANGE) {
        throw ParseError("row " + std::to_string(rows.size() + 1) + ", entry " +
                         std::to_string(row.size() + 1) + ": cannot parse \"" + cell + "\"");
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("CSV matrix is empty");
  const int n = static_cast<int>(rows.size());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw ParseError("row " + std::to_string(i + 1) + ": expected " + std::to_string(n) +
                       " entries, got " +
                       std::to_string(rows[static_cast<std::size_t>(i)].size()));
    }
  }
  return StochasticMatrix::from_rows(rows, row_sum_tol);
}

StochasticMatrix read_matrix_file(const std::string& path, double row_sum_tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    return matrix_from_csv(buffer.str(), row_sum_tol);
  }
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return matrix_from_json(j, row_sum_tol);
}

void write_matrix_file(const std::string& path, const StochasticMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    out << matrix_to_csv(m);
  } else {
    out << matrix_to_json(m).dump(2) << '\n';
  }
}

json pattern_to_json(const BooleanPattern& p) {
  return json{{"n", p.dim()}, {"rows", p.to_rows()}};
}

json class_report_to_json(const ClassReport& report) {
  json j{{"stochastic", report.stochastic},
         {"doubly_stochastic", report.doubly_stochastic},
         {"positive_diagonal", report.positive_diagonal},
         {"pattern_symmetric", report.pattern_symmetric},
         {"scrambling", report.scrambling},
         {"positive_column", report.positive_column},
         {"sarymsakov", report.sarymsakov},
         {"sia", report.sia},
         {"class_w", report.class_w}};
  if (report.sia_index.has_value()) j["sia_index"] = *report.sia_index;
  if (report.class_g.has_value()) j["class_g"] = *report.class_g;
  return j;
}

json breaker_result_to_json(const BreakerResult& result) {
  return json{{"q", matrix_to_json(result.q)},
              {"witness_pair",
               json{{"a", result.witness_pair.a.indices_one_based()},
                    {"b", result.witness_pair.b.indices_one_based()}}},
              {"q_index", result.q_index}};
}

json gallery_entry_to_json(const GalleryEntry& entry) {
  json matrices = json::array();
  for (const StochasticMatrix& m : entry.matrices) matrices.push_back(matrix_to_json(m));
  json expected = json::object();
  auto set_bool = [&expected](const char* key, const std::optional<bool>& v) {
    if (v.has_value()) expected[key] = *v;
  };
  set_bool("stochastic", entry.expected.stochastic);
  set_bool("doubly_stochastic", entry.expected.doubly_stochastic);
  set_bool("scrambling", entry.expected.scrambling);
  set_bool("sarymsakov", entry.expected.sarymsakov);
  set_bool("sia", entry.expected.sia);
  set_bool("pattern_symmetric", entry.expected.pattern_symmetric);
  set_bool("class_w", entry.expected.class_w);
  set_bool("class_g", entry.expected.class_g);
  set_bool("product_sia", entry.expected.product_sia);
  if (entry.expected.sia_index.has_value()) expected["sia_index"] = *entry.expected.sia_index;
  return json{{"name", entry.name},
              {"n", entry.n},
              {"matrices", std::move(matrices)},
              {"expected", std::move(expected)}};
}

json consensus_decision_to_json(const ConsensusDecision& decision) {
  json j{{"closure_size", decision.closure_size},
         {"truncated", decision.truncated},
         {"orientation", "left product P(k)...P(1); words list the oldest factor first"}};
  j["is_consensus_set"] =
      decision.is_consensus_set.has_value() ? json(*decision.is_consensus_set) : json();
  if (decision.witness_word.has_value()) j["witness_word"] = one_based(*decision.witness_word);
  if (decision.horizon_values.has_value()) {
    j["nu"] = decision.horizon_values->nu;
    j["mu"] = decision.horizon_values->mu;
    j["alpha"] = decision.horizon_values->alpha;
  }
  return j;
}

json convergence_report_to_json(const ConvergenceReport& report) {
  json j{{"converged", report.converged},
         {"final_defect", report.final_defect},
         {"steps_run", report.steps_run},
         {"renormalizations", report.renormalizations},
         {"tolerance", report.tolerance},
         {"trace_points", report.defect_trace.size()}};
  if (report.limit_row.has_value()) j["limit_row"] = *report.limit_row;
  return j;
}

json max_index_report_to_json(const MaxIndexReport& report) {
  json j{{"n", report.n},
         {"max_index", report.max_index},
         {"mode", report.mode == EnumerationMode::exact ? "exact" : "sampled"},
         {"patterns_examined", report.patterns_examined}};
  if (report.witness.has_value()) j["witness"] = pattern_to_json(*report.witness);
  return j;
}

ScheduleSpec schedule_spec_from_json(const json& j, double row_sum_tol) {
  if (!j.is_object() || !j.contains("pool") || !j["pool"].is_array()) {
    throw ParseError("schedule spec must be an object with a \"pool\" array");
  }
  ScheduleSpec spec;
  for (const json& m : j["pool"]) spec.pool.push_back(matrix_from_json(m, row_sum_tol));
  const std::string mode = j.value("mode", std::string("theorem7"));
  if (mode == "theorem7") {
    spec.mode = ScheduleMode::theorem7;
  } else if (mode == "iid") {
    spec.mode = ScheduleMode::iid;
  } else if (mode == "custom") {
    spec.mode = ScheduleMode::custom;
  } else {
    throw ParseError("unknown schedule mode \"" + mode + "\"");
  }
  auto read_indices = [&](const char* key) {
    std::vector<int> out;
    if (!j.contains(key)) return out;
    if (!j[key].is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
    for (const json& v : j[key]) {
      if (!v.is_number_integer()) {
        throw ParseError(std::string("\"") + key + "\" entries must be integers");
      }
      out.push_back(v.get<int>() - 1);  // wire format is 1-based
    }
    return out;
  };
  spec.sarymsakov_indices = read_indices("sarymsakov_indices");
  spec.custom_indices = read_indices("indices");
  spec.gap = j.value("gap", 1);
  spec.steps = j.value("steps", 0);
  spec.seed = j.value("seed", std::uint64_t{0});
  return spec;
}

std::string trace_to_csv(const ConvergenceReport& report) {
  std::string out = "step,defect\n";
  for (const auto& [step, defect] : report.defect_trace) {
    out += std::to_string(step);
    out += ',';
    out += double_repr(defect);
    out += '\n';
  }
  return out;
}

}  // namespace sia
