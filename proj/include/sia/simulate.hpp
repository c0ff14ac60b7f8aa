#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sia/config.hpp"
#include "sia/matrix.hpp"

namespace sia {

/// Largest column spread: max over columns of (max - min) over rows.
/// Zero exactly when all rows agree, i.e. the matrix is rank one.
double rank_one_defect(const StochasticMatrix& m);

/// Coefficient of ergodicity: 1 minus the smallest row-pair overlap.
/// Lies in [0, 1], is below 1 exactly for scrambling matrices, and is
/// submultiplicative over products.
double dobrushin(const StochasticMatrix& m);

enum class ScheduleMode { theorem7, iid, custom };

/// Recipe for an infinite left-product run. In theorem7 mode every window
/// of `gap` consecutive steps applies at least one factor from
/// `sarymsakov_indices`; iid mode draws factors uniformly; custom mode
/// replays `custom_indices` verbatim (exploratory, no convergence claim).
struct ScheduleSpec {
  std::vector<StochasticMatrix> pool;
  std::vector<int> sarymsakov_indices;  // positions into the pool, 0-based
  int gap = 1;
  int steps = 0;
  std::uint64_t seed = 0;
  ScheduleMode mode = ScheduleMode::theorem7;
  std::vector<int> custom_indices;  // 0-based, used in custom mode
};

/// Random factor sequence where consecutive Sarymsakov placements are at
/// most `gap` apart (and the first occurs within the first `gap` steps).
/// Deterministic under the seed.
std::vector<int> theorem7_schedule(int pool_size, const std::vector<int>& sarymsakov_indices,
                                   int gap, int steps, std::uint64_t seed);

struct SimulateOptions {
  double tolerance = kDefaultConvergenceTol;
  int report_every = 1;
  bool renormalize = false;       // periodic row renormalization, off by default
  int renormalize_every = 1000;
  double eps = kDefaultEps;       // support threshold for the up-front class checks
};

struct ConvergenceReport {
  std::vector<std::pair<std::int64_t, double>> defect_trace;  // (step, defect)
  bool converged = false;
  double final_defect = 0.0;
  std::optional<std::vector<double>> limit_row;  // row mean at termination
  std::int64_t steps_run = 0;
  int renormalizations = 0;
  double tolerance = kDefaultConvergenceTol;  // threshold the run was judged by
};

/// Runs the left product P(k)...P(1), recording the rank-one defect and
/// stopping once it reaches the tolerance. Pool matrices must lie in class
/// W and every nominated Sarymsakov factor must actually be Sarymsakov;
/// violations throw PoolClassViolationError before the run starts.
ConvergenceReport simulate(const ScheduleSpec& spec, const SimulateOptions& options = {});

}  // namespace sia
