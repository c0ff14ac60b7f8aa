#include "sia/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sia/classify.hpp"
#include "sia/consensus.hpp"
#include "sia/construct.hpp"
#include "sia/io.hpp"
#include "sia/simulate.hpp"

namespace sia::cli {

namespace {

using nlohmann::json;

void emit(const json& j, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << j.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : j.items()) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
        << '\n';
  }
}

struct CommonOptions {
  double eps = kDefaultEps;
  double row_sum_tol = kDefaultRowSumTol;
  std::string output = "text";
};

void add_common(CLI::App* sub, CommonOptions& common) {
  sub->add_option("--eps", common.eps, "support threshold for positive entries")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--row-sum-tol", common.row_sum_tol, "allowed row-sum deviation from 1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--output", common.output, "report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

std::vector<int> to_zero_based(const std::vector<int>& one_based, const char* what) {
  std::vector<int> out;
  out.reserve(one_based.size());
  for (int i : one_based) {
    if (i < 1) throw Error(std::string(what) + " indices are 1-based; got " + std::to_string(i));
    out.push_back(i - 1);
  }
  return out;
}

}  // namespace

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify stochastic matrices, decide consensus sets, and simulate "
               "infinite left products"};
  app.require_subcommand(1);

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "full class report for one matrix");
  CommonOptions classify_common;
  std::string classify_input;
  std::uint64_t g_budget = kDefaultClassGBudget;
  classify_cmd->add_option("--input", classify_input, "matrix file (.json or .csv)")
      ->required();
  classify_cmd->add_option("--g-budget", g_budget, "pattern budget for the class-G test")
      ->capture_default_str();
  add_common(classify_cmd, classify_common);

  // index
  auto* index_cmd = app.add_subcommand("index", "SIA index of one matrix");
  CommonOptions index_common;
  std::string index_input;
  index_cmd->add_option("--input", index_input, "matrix file (.json or .csv)")->required();
  add_common(index_cmd, index_common);

  // consensus
  auto* consensus_cmd =
      app.add_subcommand("consensus", "decide whether a finite matrix set is a consensus set");
  CommonOptions consensus_common;
  std::vector<std::string> consensus_inputs;
  std::uint64_t closure_budget = kDefaultClosureBudget;
  consensus_cmd->add_option("--inputs", consensus_inputs, "matrix files")
      ->required()
      ->expected(-1);
  consensus_cmd->add_option("--budget", closure_budget, "closure element budget")
      ->capture_default_str();
  add_common(consensus_cmd, consensus_common);

  // gallery
  auto* gallery_cmd = app.add_subcommand("gallery", "named example matrices");
  CommonOptions gallery_common;
  std::string gallery_name;
  int gallery_n = 0;
  std::string write_prefix;
  gallery_cmd->add_option("--name", gallery_name, "entry name")->required();
  gallery_cmd->add_option("--n", gallery_n, "dimension for parametric entries")
      ->check(CLI::Range(1, 64));
  gallery_cmd->add_option("--write-prefix", write_prefix,
                          "also write the matrices to <prefix>.json (pairs get _1/_2)");
  add_common(gallery_cmd, gallery_common);

  // breaker
  auto* breaker_cmd = app.add_subcommand(
      "breaker", "companion matrix whose products with the input are not SIA");
  CommonOptions breaker_common;
  std::string breaker_input;
  std::string write_q;
  breaker_cmd->add_option("--input", breaker_input, "matrix file (.json or .csv)")->required();
  breaker_cmd->add_option("--write-q", write_q, "also write the companion matrix here");
  add_common(breaker_cmd, breaker_common);

  // simulate
  auto* simulate_cmd = app.add_subcommand("simulate", "run an infinite left-product schedule");
  CommonOptions simulate_common;
  std::string spec_file;
  std::vector<std::string> pool_files;
  std::string schedule_mode = "theorem7";
  std::vector<int> sarymsakov_one_based;
  std::vector<int> custom_one_based;
  int repeat = 1;
  int gap = 1;
  int steps = 0;
  std::uint64_t sim_seed = 0;
  double tolerance = kDefaultConvergenceTol;
  int report_every = 1;
  int renormalize_every = 0;
  std::string trace_file;
  simulate_cmd->add_option("--spec", spec_file, "schedule spec JSON (alternative to flags)");
  simulate_cmd->add_option("--pool", pool_files, "pool matrix files")->expected(-1);
  simulate_cmd->add_option("--schedule", schedule_mode, "schedule mode")
      ->check(CLI::IsMember({"theorem7", "iid", "custom"}))
      ->capture_default_str();
  simulate_cmd
      ->add_option("--sarymsakov", sarymsakov_one_based,
                   "1-based pool positions of the Sarymsakov factors")
      ->delimiter(',')
      ->check(CLI::Range(1, 1 << 30));
  simulate_cmd
      ->add_option("--indices", custom_one_based, "1-based factor sequence for custom mode")
      ->delimiter(',')
      ->check(CLI::Range(1, 1 << 30));
  simulate_cmd->add_option("--repeat", repeat, "repeat the custom sequence this many times")
      ->check(CLI::Range(1, 1 << 30))
      ->capture_default_str();
  simulate_cmd->add_option("--gap", gap, "largest allowed Sarymsakov gap T")
      ->capture_default_str();
  simulate_cmd->add_option("--steps", steps, "number of factors to apply");
  simulate_cmd->add_option("--seed", sim_seed, "schedule seed")->capture_default_str();
  simulate_cmd->add_option("--tolerance", tolerance, "defect threshold for convergence")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate_cmd->add_option("--report-every", report_every, "trace recording interval")
      ->check(CLI::Range(1, 1 << 30))
      ->capture_default_str();
  simulate_cmd->add_option("--renormalize-every", renormalize_every,
                           "renormalize rows every k steps (0 disables)")
      ->check(CLI::Range(0, 1 << 30));
  simulate_cmd->add_option("--trace", trace_file, "write the step,defect trace CSV here");
  add_common(simulate_cmd, simulate_common);

  // maxindex
  auto* maxindex_cmd =
      app.add_subcommand("maxindex", "largest SIA index over n x n patterns");
  CommonOptions maxindex_common;
  int max_n = 0;
  std::string mode = "exact";
  std::uint64_t max_budget = 1'000'000;
  std::uint64_t max_seed = 0;
  int threads = 1;
  maxindex_cmd->add_option("--n", max_n, "pattern dimension")->required();
  maxindex_cmd->add_option("--mode", mode, "enumeration mode")
      ->check(CLI::IsMember({"exact", "sampled"}))
      ->capture_default_str();
  maxindex_cmd
      ->add_option("--budget", max_budget,
                   "exact: enumeration cap; sampled: number of draws")
      ->capture_default_str();
  maxindex_cmd->add_option("--seed", max_seed, "sampling seed")->capture_default_str();
  maxindex_cmd->add_option("--threads", threads, "worker threads for the exact scan")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  add_common(maxindex_cmd, maxindex_common);

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (classify_cmd->parsed()) {
      const StochasticMatrix m = read_matrix_file(classify_input, classify_common.row_sum_tol);
      ClassifyOptions options;
      options.eps = classify_common.eps;
      options.row_sum_tol = classify_common.row_sum_tol;
      options.g_budget = g_budget;
      emit(class_report_to_json(classify(m, options)), classify_common.output, out);
    } else if (index_cmd->parsed()) {
      const StochasticMatrix m = read_matrix_file(index_input, index_common.row_sum_tol);
      const std::optional<int> s = sia_index(pattern_of(m, index_common.eps));
      json j{{"sia", s.has_value()}};
      if (s.has_value()) j["sia_index"] = *s;
      emit(j, index_common.output, out);
    } else if (consensus_cmd->parsed()) {
      std::vector<StochasticMatrix> matrices;
      for (const std::string& path : consensus_inputs) {
        matrices.push_back(read_matrix_file(path, consensus_common.row_sum_tol));
      }
      const ConsensusDecision decision =
          decide_consensus(matrices, closure_budget, consensus_common.eps);
      emit(consensus_decision_to_json(decision), consensus_common.output, out);
    } else if (gallery_cmd->parsed()) {
      const GalleryEntry entry =
          gallery(gallery_name, gallery_n > 0 ? std::optional<int>(gallery_n) : std::nullopt);
      if (!write_prefix.empty()) {
        if (entry.matrices.size() == 1) {
          write_matrix_file(write_prefix + ".json", entry.matrices.front());
        } else {
          for (std::size_t i = 0; i < entry.matrices.size(); ++i) {
            write_matrix_file(write_prefix + "_" + std::to_string(i + 1) + ".json",
                              entry.matrices[i]);
          }
        }
      }
      emit(gallery_entry_to_json(entry), gallery_common.output, out);
    } else if (breaker_cmd->parsed()) {
      const StochasticMatrix m = read_matrix_file(breaker_input, breaker_common.row_sum_tol);
      const BreakerResult result = breaker(pattern_of(m, breaker_common.eps));
      if (!write_q.empty()) write_matrix_file(write_q, result.q);
      emit(breaker_result_to_json(result), breaker_common.output, out);
    } else if (simulate_cmd->parsed()) {
      ScheduleSpec spec;
      if (!spec_file.empty()) {
        std::ifstream in(spec_file);
        if (!in) throw ParseError("cannot open " + spec_file);
        json j;
        try {
          j = json::parse(in);
        } catch (const json::parse_error& e) {
          throw ParseError(spec_file + ": " + e.what());
        }
        spec = schedule_spec_from_json(j, simulate_common.row_sum_tol);
      } else {
        if (pool_files.empty()) throw Error("simulate needs --spec or --pool");
        for (const std::string& path : pool_files) {
          spec.pool.push_back(read_matrix_file(path, simulate_common.row_sum_tol));
        }
        spec.sarymsakov_indices = to_zero_based(sarymsakov_one_based, "--sarymsakov");
        spec.custom_indices = to_zero_based(custom_one_based, "--indices");
        if (repeat > 1) {
          const std::vector<int> base = spec.custom_indices;
          for (int r = 1; r < repeat; ++r) {
            spec.custom_indices.insert(spec.custom_indices.end(), base.begin(), base.end());
          }
        }
        spec.gap = gap;
        spec.steps = steps;
        spec.seed = sim_seed;
        if (schedule_mode == "theorem7") spec.mode = ScheduleMode::theorem7;
        if (schedule_mode == "iid") spec.mode = ScheduleMode::iid;
        if (schedule_mode == "custom") spec.mode = ScheduleMode::custom;
      }
      SimulateOptions options;
      options.tolerance = tolerance;
      options.report_every = report_every;
      options.renormalize = renormalize_every > 0;
      if (renormalize_every > 0) options.renormalize_every = renormalize_every;
      options.eps = simulate_common.eps;
      const ConvergenceReport report = simulate(spec, options);
      if (!trace_file.empty()) {
        std::ofstream trace(trace_file);
        if (!trace) throw Error("cannot write " + trace_file);
        trace << trace_to_csv(report);
      }
      emit(convergence_report_to_json(report), simulate_common.output, out);
    } else if (maxindex_cmd->parsed()) {
      const MaxIndexReport report = max_sia_index(
          max_n, mode == "exact" ? EnumerationMode::exact : EnumerationMode::sampled,
          max_budget, max_seed, threads);
      emit(max_index_report_to_json(report), maxindex_common.output, out);
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace sia::cli
