#include "sia/matrix.hpp"

#include <cmath>
#include <string>

namespace sia {

StochasticMatrix::StochasticMatrix(int n, std::vector<double> entries, double row_sum_tol)
    : n_(n), entries_(std::move(entries)) {
  if (n < 1 || n > kMaxDim) {
    throw DimensionError("matrix dimension must be in [1, " + std::to_string(kMaxDim) +
                         "], got " + std::to_string(n));
  }
  const std::size_t expected = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (entries_.size() != expected) {
    throw DimensionError("expected " + std::to_string(expected) + " entries, got " +
                         std::to_string(entries_.size()));
  }
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double v = (*this)(i, j);
      if (!std::isfinite(v)) {
        throw NotStochasticError("row " + std::to_string(i + 1) + ", entry " +
                                 std::to_string(j + 1) + ": not finite");
      }
      if (v < 0.0) {
        throw NotStochasticError("row " + std::to_string(i + 1) + ", entry " +
                                 std::to_string(j + 1) + ": negative value " +
                                 std::to_string(v));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > row_sum_tol) {
      throw NotStochasticError("row " + std::to_string(i + 1) + ": sum " +
                               std::to_string(sum) + " deviates from 1 beyond tolerance");
    }
  }
}

StochasticMatrix StochasticMatrix::from_rows(const std::vector<std::vector<double>>& rows,
                                             double row_sum_tol) {
  const int n = static_cast<int>(rows.size());
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) {
      throw DimensionError("matrix rows must all have length " + std::to_string(n));
    }
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return StochasticMatrix(n, std::move(entries), row_sum_tol);
}

StochasticMatrix StochasticMatrix::identity(int n) {
  std::vector<double> entries(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(i)] = 1.0;
  }
  return StochasticMatrix(n, std::move(entries));
}

StochasticMatrix StochasticMatrix::uniform(int n) {
  std::vector<double> entries(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                              1.0 / static_cast<double>(n));
  return StochasticMatrix(n, std::move(entries));
}

std::span<const double> StochasticMatrix::row(int i) const {
  return {entries_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_),
          static_cast<std::size_t>(n_)};
}

StochasticMatrix multiply(const StochasticMatrix& a, const StochasticMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("matrix product requires equal dimensions");
  const int n = a.dim();
  std::vector<double> out(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      const std::size_t base = static_cast<std::size_t>(i) * static_cast<std::size_t>(n);
      for (int j = 0; j < n; ++j) {
        out[base + static_cast<std::size_t>(j)] += ail * b(l, j);
      }
    }
  }
  return StochasticMatrix(n, std::move(out));
}

}  // namespace sia
