#include "sia/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sia/classify.hpp"
#include "sia/pattern.hpp"
#include "sia/rng.hpp"

namespace sia {

double rank_one_defect(const StochasticMatrix& m) {
  const int n = m.dim();
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    double lo = m(0, j);
    double hi = lo;
    for (int i = 1; i < n; ++i) {
      lo = std::min(lo, m(i, j));
      hi = std::max(hi, m(i, j));
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

double dobrushin(const StochasticMatrix& m) {
  const int n = m.dim();
  double min_overlap = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double overlap = 0.0;
      for (int k = 0; k < n; ++k) overlap += std::min(m(i, k), m(j, k));
      min_overlap = std::min(min_overlap, overlap);
    }
  }
  return std::clamp(1.0 - min_overlap, 0.0, 1.0);
}

std::vector<int> theorem7_schedule(int pool_size, const std::vector<int>& sarymsakov_indices,
                                   int gap, int steps, std::uint64_t seed) {
  if (pool_size < 1) throw Error("schedule requires a nonempty pool");
  if (gap < 1) throw Error("gap must be >= 1");
  if (steps < 0) throw Error("steps must be nonnegative");
  if (sarymsakov_indices.empty()) {
    throw Error("a bounded-gap schedule needs at least one Sarymsakov factor");
  }
  for (int idx : sarymsakov_indices) {
    if (idx < 0 || idx >= pool_size) {
      throw Error("Sarymsakov index " + std::to_string(idx + 1) + " outside the pool");
    }
  }
  Rng rng(seed);
  std::vector<int> schedule(static_cast<std::size_t>(steps));
  for (int& s : schedule) s = rng.below(pool_size);
  // Marks spaced by gaps drawn in [1, gap] keep every gap-length window
  // covered, including the head and the tail.
  int position = -1;
  while (true) {
    position += 1 + rng.below(gap);
    if (position >= steps) break;
    schedule[static_cast<std::size_t>(position)] =
        sarymsakov_indices[static_cast<std::size_t>(
            rng.below(static_cast<int>(sarymsakov_indices.size())))];
  }
  return schedule;
}

namespace {

std::vector<int> build_schedule(const ScheduleSpec& spec) {
  const int pool_size = static_cast<int>(spec.pool.size());
  switch (spec.mode) {
    case ScheduleMode::theorem7:
      return theorem7_schedule(pool_size, spec.sarymsakov_indices, spec.gap, spec.steps,
                               spec.seed);
    case ScheduleMode::iid: {
      if (spec.steps < 0) throw Error("steps must be nonnegative");
      Rng rng(spec.seed);
      std::vector<int> schedule(static_cast<std::size_t>(spec.steps));
      for (int& s : schedule) s = rng.below(pool_size);
      return schedule;
    }
    case ScheduleMode::custom: {
      if (spec.steps != 0 &&
          spec.steps != static_cast<int>(spec.custom_indices.size())) {
        throw Error("custom schedule length disagrees with the requested step count");
      }
      for (int idx : spec.custom_indices) {
        if (idx < 0 || idx >= pool_size) {
          throw Error("custom index " + std::to_string(idx + 1) + " outside the pool");
        }
      }
      return spec.custom_indices;
    }
  }
  throw Error("unknown schedule mode");
}

double defect_of(const std::vector<double>& entries, int n) {
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    double lo = entries[static_cast<std::size_t>(j)];
    double hi = lo;
    for (int i = 1; i < n; ++i) {
      const double v =
          entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(j)];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

}  // namespace

ConvergenceReport simulate(const ScheduleSpec& spec, const SimulateOptions& options) {
  if (spec.pool.empty()) throw Error("simulation requires a nonempty pool");
  if (options.tolerance <= 0.0) throw Error("tolerance must be positive");
  if (options.report_every < 1) throw Error("report_every must be >= 1");
  if (options.renormalize && options.renormalize_every < 1) {
    throw Error("renormalize_every must be >= 1");
  }
  const int n = spec.pool.front().dim();
  for (const StochasticMatrix& m : spec.pool) {
    if (m.dim() != n) throw DimensionError("pool matrices must share a dimension");
  }

  // Hypothesis checks: the whole pool sits in class W and every nominated
  // index really is Sarymsakov.
  std::vector<BooleanPattern> patterns;
  patterns.reserve(spec.pool.size());
  for (std::size_t i = 0; i < spec.pool.size(); ++i) {
    patterns.push_back(pattern_of(spec.pool[i], options.eps));
    if (!in_class_w(patterns.back())) {
      throw PoolClassViolationError("pool matrix " + std::to_string(i + 1) +
                                    " is not in class W");
    }
  }
  for (int idx : spec.sarymsakov_indices) {
    if (idx < 0 || idx >= static_cast<int>(spec.pool.size())) {
      throw PoolClassViolationError("Sarymsakov index " + std::to_string(idx + 1) +
                                    " outside the pool");
    }
    if (!is_sarymsakov(patterns[static_cast<std::size_t>(idx)])) {
      throw PoolClassViolationError("pool matrix " + std::to_string(idx + 1) +
                                    " is nominated Sarymsakov but fails the test");
    }
  }

  const std::vector<int> schedule = build_schedule(spec);

  ConvergenceReport report;
  report.tolerance = options.tolerance;
  std::vector<double> product(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  std::vector<double> scratch(product.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    product[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(i)] = 1.0;
  }

  double defect = defect_of(product, n);
  report.defect_trace.emplace_back(0, defect);
  const std::int64_t total_steps = static_cast<std::int64_t>(schedule.size());
  std::int64_t step = 0;
  while (step < total_steps) {
    const StochasticMatrix& factor = spec.pool[static_cast<std::size_t>(
        schedule[static_cast<std::size_t>(step)])];
    ++step;
    // product <- factor * product
    std::fill(scratch.begin(), scratch.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < n; ++l) {
        const double f = factor(i, l);
        if (f == 0.0) continue;
        const std::size_t out_base =
            static_cast<std::size_t>(i) * static_cast<std::size_t>(n);
        const std::size_t in_base =
            static_cast<std::size_t>(l) * static_cast<std::size_t>(n);
        for (int j = 0; j < n; ++j) {
          scratch[out_base + static_cast<std::size_t>(j)] +=
              f * product[in_base + static_cast<std::size_t>(j)];
        }
      }
    }
    product.swap(scratch);

    if (options.renormalize && step % options.renormalize_every == 0) {
      for (int i = 0; i < n; ++i) {
        const std::size_t base = static_cast<std::size_t>(i) * static_cast<std::size_t>(n);
        double sum = 0.0;
        for (int j = 0; j < n; ++j) sum += product[base + static_cast<std::size_t>(j)];
        for (int j = 0; j < n; ++j) product[base + static_cast<std::size_t>(j)] /= sum;
      }
      ++report.renormalizations;
    }

    defect = defect_of(product, n);
    const bool reached = defect <= options.tolerance;
    if (step % options.report_every == 0 || step == total_steps || reached) {
      report.defect_trace.emplace_back(step, defect);
    }
    if (reached) {
      report.converged = true;
      break;
    }
  }

  report.steps_run = step;
  report.final_defect = defect;
  if (report.converged) {
    std::vector<double> mean(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        mean[static_cast<std::size_t>(j)] +=
            product[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                    static_cast<std::size_t>(j)] /
            static_cast<double>(n);
      }
    }
    report.limit_row = std::move(mean);
  }
  return report;
}

}  // namespace sia
