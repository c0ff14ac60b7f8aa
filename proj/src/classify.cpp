#include "sia/classify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "sia/rng.hpp"

namespace sia {

namespace {

std::uint64_t consequent_bits(const BooleanPattern& p, std::uint64_t a) {
  std::uint64_t out = 0;
  while (a != 0) {
    out |= p.row_bits(std::countr_zero(a));
    a &= a - 1;
  }
  return out;
}

using ImagePair = std::pair<std::uint64_t, std::uint64_t>;

bool seen_before(const std::vector<ImagePair>& visited, const ImagePair& state) {
  return std::find(visited.begin(), visited.end(), state) != visited.end();
}

/// Smallest k at which the pair (a, b) satisfies the stage-k condition:
/// intersecting k-stage images, or disjoint images whose union outgrew
/// |a union b|. Returns 0 when no stage up to the n(n-1)/2 bound works,
/// which by the bounded-intersection theorem proves the pattern non-SIA.
int first_settling_stage(const BooleanPattern& p, std::uint64_t a, std::uint64_t b,
                         std::vector<ImagePair>& visited) {
  const int n = p.dim();
  const int bound = n * (n - 1) / 2;
  const int union_size = std::popcount(a | b);
  std::uint64_t fa = consequent_bits(p, a);
  std::uint64_t fb = consequent_bits(p, b);
  visited.clear();
  for (int k = 1; k <= bound; ++k) {
    if ((fa & fb) != 0 || std::popcount(fa | fb) > union_size) return k;
    if (seen_before(visited, {fa, fb})) return 0;  // trapped in a cycle
    visited.push_back({fa, fb});
    fa = consequent_bits(p, fa);
    fb = consequent_bits(p, fb);
  }
  return 0;
}

}  // namespace

bool is_scrambling(const BooleanPattern& p) {
  const int n = p.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((p.row_bits(i) & p.row_bits(j)) == 0) return false;
    }
  }
  return true;
}

bool is_sarymsakov(const BooleanPattern& p) {
  const int n = p.dim();
  if (n == 1) return true;
  for (const DisjointPair& pair : DisjointPairs(n)) {
    const std::uint64_t fa = consequent_bits(p, pair.a.bits());
    const std::uint64_t fb = consequent_bits(p, pair.b.bits());
    if ((fa & fb) != 0) continue;
    if (std::popcount(fa | fb) > pair.a.count() + pair.b.count()) continue;
    return false;
  }
  return true;
}

bool in_class_w(const BooleanPattern& p) {
  const int n = p.dim();
  if (n == 1) return true;
  for (const DisjointPair& pair : DisjointPairs(n)) {
    const std::uint64_t fa = consequent_bits(p, pair.a.bits());
    const std::uint64_t fb = consequent_bits(p, pair.b.bits());
    if ((fa & fb) != 0) continue;
    if (std::popcount(fa | fb) >= pair.a.count() + pair.b.count()) continue;
    return false;
  }
  return true;
}

bool is_sia(const BooleanPattern& p) {
  const int n = p.dim();
  if (n == 1) return true;
  const int bound = n * (n - 1) / 2;
  std::vector<ImagePair> visited;
  visited.reserve(static_cast<std::size_t>(bound));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::uint64_t fa = p.row_bits(i);
      std::uint64_t fb = p.row_bits(j);
      visited.clear();
      bool met = false;
      for (int k = 1; k <= bound; ++k) {
        if ((fa & fb) != 0) {
          met = true;
          break;
        }
        if (seen_before(visited, {fa, fb})) break;
        visited.push_back({fa, fb});
        fa = consequent_bits(p, fa);
        fb = consequent_bits(p, fb);
      }
      if (!met) return false;
    }
  }
  return true;
}

std::optional<int> sia_index(const BooleanPattern& p) {
  const int n = p.dim();
  if (n == 1) return 1;
  std::vector<ImagePair> visited;
  visited.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  int index = 1;
  for (const DisjointPair& pair : DisjointPairs(n)) {
    const int stage = first_settling_stage(p, pair.a.bits(), pair.b.bits(), visited);
    if (stage == 0) return std::nullopt;
    index = std::max(index, stage);
  }
  return index;
}

bool is_pattern_symmetric(const BooleanPattern& p) {
  const int n = p.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (p.bit(i, j) != p.bit(j, i)) return false;
    }
  }
  return true;
}

bool has_positive_column(const BooleanPattern& p) {
  std::uint64_t common = universe_mask(p.dim());
  for (int i = 0; i < p.dim(); ++i) common &= p.row_bits(i);
  return common != 0;
}

bool has_positive_diagonal(const BooleanPattern& p) {
  for (int i = 0; i < p.dim(); ++i) {
    if (!p.bit(i, i)) return false;
  }
  return true;
}

bool is_doubly_stochastic(const StochasticMatrix& m, double tol) {
  const int n = m.dim();
  for (int j = 0; j < n; ++j) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += m(i, j);
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

std::uint64_t row_valid_pattern_count(int n) {
  if (n < 1 || n > kMaxEnumDim) {
    throw DimensionError("pattern enumeration supports n in [1, " +
                         std::to_string(kMaxEnumDim) + "], got " + std::to_string(n));
  }
  const std::uint64_t base = (std::uint64_t{1} << n) - 1;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= base;
  }
  return total;
}

BooleanPattern nth_row_valid_pattern(int n, std::uint64_t index) {
  const std::uint64_t base = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    rows[static_cast<std::size_t>(i)] = index % base + 1;
    index /= base;
  }
  return BooleanPattern(n, std::move(rows));
}

ClassGResult in_class_g(const BooleanPattern& p, std::uint64_t budget) {
  if (!is_sia(p)) return {false, 0};  // class G sits inside the SIA class
  const int n = p.dim();
  const std::uint64_t total = row_valid_pattern_count(n);
  std::uint64_t examined = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (examined == budget) return {std::nullopt, examined};
    const BooleanPattern q = nth_row_valid_pattern(n, idx);
    ++examined;
    if (!is_sia(q)) continue;
    if (!is_sia(bool_product(q, p))) return {false, examined};
  }
  return {true, examined};
}

ClassReport classify(const StochasticMatrix& m, const ClassifyOptions& options) {
  const BooleanPattern p = pattern_of(m, options.eps);
  ClassReport report;
  report.stochastic = true;  // construction already validated the matrix
  report.doubly_stochastic = is_doubly_stochastic(m, options.row_sum_tol);
  report.positive_diagonal = has_positive_diagonal(p);
  report.pattern_symmetric = is_pattern_symmetric(p);
  report.scrambling = is_scrambling(p);
  report.positive_column = has_positive_column(p);
  report.sarymsakov = is_sarymsakov(p);
  report.sia_index = sia_index(p);
  report.sia = report.sia_index.has_value();
  report.class_w = in_class_w(p);
  report.class_g = in_class_g(p, options.g_budget).member;
  return report;
}

namespace {

struct ScanResult {
  int best = 0;
  std::uint64_t first_witness = 0;
  bool found = false;
};

ScanResult scan_pattern_range(int n, std::uint64_t lo, std::uint64_t hi) {
  ScanResult result;
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    const std::optional<int> s = sia_index(nth_row_valid_pattern(n, idx));
    if (s.has_value() && (!result.found || *s > result.best)) {
      result.best = *s;
      result.first_witness = idx;
      result.found = true;
    }
  }
  return result;
}

}  // namespace

MaxIndexReport max_sia_index(int n, EnumerationMode mode, std::uint64_t budget,
                             std::uint64_t seed, int threads) {
  if (n < 2) throw DimensionError("max_sia_index requires n >= 2");
  MaxIndexReport report;
  report.n = n;
  report.mode = mode;

  if (mode == EnumerationMode::exact) {
    const std::uint64_t total = row_valid_pattern_count(n);
    if (total > budget) {
      throw BudgetExceededError("exact enumeration needs " + std::to_string(total) +
                                " patterns but the budget is " + std::to_string(budget));
    }
    const int workers =
        std::max(1, std::min({threads, static_cast<int>(std::thread::hardware_concurrency()),
                              static_cast<int>(std::min<std::uint64_t>(total, 64))}));
    std::vector<ScanResult> partial(static_cast<std::size_t>(workers));
    if (workers == 1) {
      partial[0] = scan_pattern_range(n, 0, total);
    } else {
      std::vector<std::thread> pool;
      const std::uint64_t chunk = (total + static_cast<std::uint64_t>(workers) - 1) /
                                  static_cast<std::uint64_t>(workers);
      for (int w = 0; w < workers; ++w) {
        const std::uint64_t lo = chunk * static_cast<std::uint64_t>(w);
        const std::uint64_t hi = std::min(total, lo + chunk);
        pool.emplace_back([n, lo, hi, w, &partial] {
          partial[static_cast<std::size_t>(w)] = scan_pattern_range(n, lo, hi);
        });
      }
      for (auto& t : pool) t.join();
    }
    ScanResult merged;
    for (const ScanResult& r : partial) {
      if (!r.found) continue;
      if (!merged.found || r.best > merged.best) {
        merged = r;
      } else if (r.best == merged.best) {
        merged.first_witness = std::min(merged.first_witness, r.first_witness);
      }
    }
    report.patterns_examined = total;
    report.max_index = merged.found ? merged.best : 0;
    if (merged.found) report.witness = nth_row_valid_pattern(n, merged.first_witness);
    return report;
  }

  Rng rng(seed);
  const std::uint64_t row_values = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
  for (std::uint64_t draw = 0; draw < budget; ++draw) {
    for (auto& row : rows) row = 1 + rng.next() % row_values;
    const BooleanPattern p(n, rows);
    const std::optional<int> s = sia_index(p);
    if (s.has_value() && (!report.witness.has_value() || *s > report.max_index)) {
      report.max_index = *s;
      report.witness = p;
    }
  }
  report.patterns_examined = budget;
  return report;
}

}  // namespace sia
