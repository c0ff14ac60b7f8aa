#pragma once

#include <cstdint>
#include <vector>

#include "sia/config.hpp"
#include "sia/errors.hpp"
#include "sia/index_set.hpp"
#include "sia/matrix.hpp"

namespace sia {

/// Zero/nonzero support of a stochastic matrix, one bit mask per row.
/// Every class test in this library depends on the pattern alone, never on
/// entry magnitudes, so this is the carrier for all of them. Rows are
/// required to be nonempty (stochasticity forces a positive entry per row).
class BooleanPattern {
 public:
  BooleanPattern(int n, std::vector<std::uint64_t> rows);

  static BooleanPattern identity(int n);
  static BooleanPattern from_rows(const std::vector<std::vector<int>>& zero_one_rows);

  int dim() const { return n_; }
  std::uint64_t row_bits(int i) const { return rows_[static_cast<std::size_t>(i)]; }
  IndexSet row(int i) const { return IndexSet(n_, row_bits(i)); }
  bool bit(int i, int j) const { return ((row_bits(i) >> j) & 1u) != 0; }
  std::vector<std::vector<int>> to_rows() const;

  bool operator==(const BooleanPattern&) const = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

struct BooleanPatternHash {
  std::size_t operator()(const BooleanPattern& p) const noexcept;
};

/// Support of m with entries above eps treated as positive.
/// Throws EmptyRowError if thresholding erases a whole row.
BooleanPattern pattern_of(const StochasticMatrix& m, double eps = kDefaultEps);

/// One-stage consequent indices of a: the columns receiving positive mass
/// from some row in a.
IndexSet consequent_set(const BooleanPattern& p, const IndexSet& a);

/// k-fold iterate of consequent_set, k >= 1.
IndexSet k_consequent_set(const BooleanPattern& p, const IndexSet& a, int k);

/// Support of the numeric product PQ. Nonnegativity rules out cancellation,
/// so the OR-AND Boolean product is exact.
BooleanPattern bool_product(const BooleanPattern& p, const BooleanPattern& q);

/// k-th Boolean power, k >= 1.
BooleanPattern bool_power(const BooleanPattern& p, int k);

}  // namespace sia
