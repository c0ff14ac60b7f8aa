#include "sia/pattern.hpp"

#include <bit>
#include <string>

namespace sia {

BooleanPattern::BooleanPattern(int n, std::vector<std::uint64_t> rows)
    : n_(n), rows_(std::move(rows)) {
  const std::uint64_t mask = universe_mask(n);
  if (rows_.size() != static_cast<std::size_t>(n)) {
    throw DimensionError("expected " + std::to_string(n) + " pattern rows, got " +
                         std::to_string(rows_.size()));
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if ((rows_[i] & ~mask) != 0) {
      throw DimensionError("pattern row " + std::to_string(i + 1) +
                           " has bits outside the universe");
    }
    if (rows_[i] == 0) {
      throw EmptyRowError("pattern row " + std::to_string(i + 1) + " is empty");
    }
  }
}

BooleanPattern BooleanPattern::identity(int n) {
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;
  return BooleanPattern(n, std::move(rows));
}

BooleanPattern BooleanPattern::from_rows(const std::vector<std::vector<int>>& zero_one_rows) {
  const int n = static_cast<int>(zero_one_rows.size());
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    const auto& row = zero_one_rows[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) != n) {
      throw DimensionError("pattern rows must all have length " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) {
      if (row[static_cast<std::size_t>(j)] != 0) {
        rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
      }
    }
  }
  return BooleanPattern(n, std::move(rows));
}

std::vector<std::vector<int>> BooleanPattern::to_rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_),
                                    std::vector<int>(static_cast<std::size_t>(n_), 0));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (bit(i, j)) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    }
  }
  return out;
}

std::size_t BooleanPatternHash::operator()(const BooleanPattern& p) const noexcept {
  // FNV-1a over the row words.
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(p.dim()));
  for (int i = 0; i < p.dim(); ++i) mix(p.row_bits(i));
  return static_cast<std::size_t>(h);
}

BooleanPattern pattern_of(const StochasticMatrix& m, double eps) {
  if (eps < 0.0) throw Error("eps must be nonnegative");
  const int n = m.dim();
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (m(i, j) > eps) rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
    }
    if (rows[static_cast<std::size_t>(i)] == 0) {
      throw EmptyRowError("row " + std::to_string(i + 1) +
                          " has no entry above eps; eps too large or matrix invalid");
    }
  }
  return BooleanPattern(n, std::move(rows));
}

IndexSet consequent_set(const BooleanPattern& p, const IndexSet& a) {
  if (a.universe() != p.dim()) throw DimensionError("index set does not match pattern");
  std::uint64_t out = 0;
  std::uint64_t rest = a.bits();
  while (rest != 0) {
    out |= p.row_bits(std::countr_zero(rest));
    rest &= rest - 1;
  }
  return IndexSet(p.dim(), out);
}

IndexSet k_consequent_set(const BooleanPattern& p, const IndexSet& a, int k) {
  if (k < 1) throw Error("stage count k must be >= 1");
  IndexSet current = consequent_set(p, a);
  for (int stage = 1; stage < k; ++stage) current = consequent_set(p, current);
  return current;
}

BooleanPattern bool_product(const BooleanPattern& p, const BooleanPattern& q) {
  if (p.dim() != q.dim()) throw DimensionError("pattern product requires equal dimensions");
  const int n = p.dim();
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    std::uint64_t rest = p.row_bits(i);
    std::uint64_t acc = 0;
    while (rest != 0) {
      acc |= q.row_bits(std::countr_zero(rest));
      rest &= rest - 1;
    }
    rows[static_cast<std::size_t>(i)] = acc;
  }
  return BooleanPattern(n, std::move(rows));
}

BooleanPattern bool_power(const BooleanPattern& p, int k) {
  if (k < 1) throw Error("power must be >= 1");
  BooleanPattern result = p;
  for (int stage = 1; stage < k; ++stage) result = bool_product(result, p);
  return result;
}

}  // namespace sia
