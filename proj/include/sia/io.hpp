#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sia/classify.hpp"
#include "sia/consensus.hpp"
#include "sia/construct.hpp"
#include "sia/matrix.hpp"
#include "sia/pattern.hpp"
#include "sia/simulate.hpp"

namespace sia {

// Matrix wire format: {"n": 3, "rows": [[...], ...]} or CSV with one
// comma-separated row per line. Doubles are written in shortest
// round-trip form, so written matrices re-read bit-identically.

nlohmann::json matrix_to_json(const StochasticMatrix& m);
StochasticMatrix matrix_from_json(const nlohmann::json& j,
                                  double row_sum_tol = kDefaultRowSumTol);

std::string matrix_to_csv(const StochasticMatrix& m);
StochasticMatrix matrix_from_csv(const std::string& text,
                                 double row_sum_tol = kDefaultRowSumTol);

/// Dispatches on the .csv extension, JSON otherwise.
StochasticMatrix read_matrix_file(const std::string& path,
                                  double row_sum_tol = kDefaultRowSumTol);
void write_matrix_file(const std::string& path, const StochasticMatrix& m);

nlohmann::json pattern_to_json(const BooleanPattern& p);

nlohmann::json class_report_to_json(const ClassReport& report);
nlohmann::json breaker_result_to_json(const BreakerResult& result);
nlohmann::json gallery_entry_to_json(const GalleryEntry& entry);
nlohmann::json consensus_decision_to_json(const ConsensusDecision& decision);
nlohmann::json convergence_report_to_json(const ConvergenceReport& report);
nlohmann::json max_index_report_to_json(const MaxIndexReport& report);

/// Schedule spec JSON: {"pool": [matrix...], "mode": "theorem7"|"iid"|
/// "custom", "sarymsakov_indices": [1-based...], "gap": T, "steps": N,
/// "seed": S, "indices": [1-based...]}.
ScheduleSpec schedule_spec_from_json(const nlohmann::json& j,
                                     double row_sum_tol = kDefaultRowSumTol);

std::string trace_to_csv(const ConvergenceReport& report);

}  // namespace sia
