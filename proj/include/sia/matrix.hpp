#pragma once

#include <span>
#include <vector>

#include "sia/config.hpp"
#include "sia/errors.hpp"

namespace sia {

/// Dense row-stochastic matrix: square, nonnegative, unit row sums within a
/// tolerance. Immutable after construction.
class StochasticMatrix {
 public:
  StochasticMatrix(int n, std::vector<double> entries,
                   double row_sum_tol = kDefaultRowSumTol);

  static StochasticMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                    double row_sum_tol = kDefaultRowSumTol);
  static StochasticMatrix identity(int n);
  static StochasticMatrix uniform(int n);

  int dim() const { return n_; }
  double operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                    static_cast<std::size_t>(j)];
  }
  std::span<const double> row(int i) const;
  const std::vector<double>& entries() const { return entries_; }

  bool operator==(const StochasticMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<double> entries_;  // row-major
};

/// Numeric product a*b; both factors must share a dimension.
StochasticMatrix multiply(const StochasticMatrix& a, const StochasticMatrix& b);

}  // namespace sia
