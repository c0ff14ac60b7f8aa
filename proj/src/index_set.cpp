#include "sia/index_set.hpp"

#include <string>

namespace sia {

std::uint64_t universe_mask(int n) {
  if (n <= 0 || n > kMaxDim) {
    throw DimensionError("universe size must be in [1, " + std::to_string(kMaxDim) +
                         "], got " + std::to_string(n));
  }
  return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

IndexSet::IndexSet(int universe, std::uint64_t bits) : n_(universe), bits_(bits) {
  if ((bits & ~universe_mask(universe)) != 0) {
    throw DimensionError("bit set exceeds universe of size " + std::to_string(universe));
  }
}

IndexSet IndexSet::empty_set(int universe) { return IndexSet(universe, 0); }

IndexSet IndexSet::full_set(int universe) {
  return IndexSet(universe, universe_mask(universe));
}

IndexSet IndexSet::singleton(int universe, int index) {
  if (index < 0 || index >= universe) {
    throw DimensionError("index " + std::to_string(index) + " outside universe");
  }
  return IndexSet(universe, std::uint64_t{1} << index);
}

IndexSet IndexSet::from_indices(int universe, const std::vector<int>& indices) {
  std::uint64_t bits = 0;
  for (int i : indices) {
    if (i < 0 || i >= universe) {
      throw DimensionError("index " + std::to_string(i) + " outside universe");
    }
    bits |= std::uint64_t{1} << i;
  }
  return IndexSet(universe, bits);
}

bool IndexSet::contains(int index) const {
  return index >= 0 && index < n_ && ((bits_ >> index) & 1u) != 0;
}

IndexSet IndexSet::complement() const {
  return IndexSet(n_, ~bits_ & universe_mask(n_));
}

std::vector<int> IndexSet::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count()));
  std::uint64_t rest = bits_;
  while (rest != 0) {
    out.push_back(std::countr_zero(rest));
    rest &= rest - 1;
  }
  return out;
}

std::vector<int> IndexSet::indices_one_based() const {
  std::vector<int> out = indices();
  for (int& i : out) ++i;
  return out;
}

IndexSet operator|(const IndexSet& a, const IndexSet& b) {
  if (a.n_ != b.n_) throw DimensionError("index sets have different universes");
  return IndexSet(a.n_, a.bits_ | b.bits_);
}

IndexSet operator&(const IndexSet& a, const IndexSet& b) {
  if (a.n_ != b.n_) throw DimensionError("index sets have different universes");
  return IndexSet(a.n_, a.bits_ & b.bits_);
}

DisjointPair DisjointPair::canonical(const IndexSet& x, const IndexSet& y) {
  if (x.universe() != y.universe()) {
    throw DimensionError("pair members have different universes");
  }
  if (x.empty() || y.empty()) throw Error("pair members must be nonempty");
  if (x.intersects(y)) throw Error("pair members must be disjoint");
  if (std::countr_zero(x.bits()) < std::countr_zero(y.bits())) return {x, y};
  return {y, x};
}

DisjointPairs::DisjointPairs(int n) : n_(n) {
  if (n < 2) {
    throw DimensionError("disjoint pairs require dimension >= 2, got " + std::to_string(n));
  }
  if (n > kMaxEnumDim) {
    throw DimensionError("disjoint-pair enumeration capped at n = " +
                         std::to_string(kMaxEnumDim) + ", got " + std::to_string(n));
  }
}

std::uint64_t DisjointPairs::count(int n) {
  std::uint64_t pow3 = 1;
  for (int i = 0; i < n; ++i) pow3 *= 3;
  return (pow3 - (std::uint64_t{1} << (n + 1)) + 1) / 2;
}

DisjointPairs::Iterator::Iterator(int n)
    : n_(n), digits_(static_cast<std::size_t>(n), 0), done_(false) {
  advance();
}

DisjointPair DisjointPairs::Iterator::operator*() const {
  return {IndexSet(n_, a_), IndexSet(n_, b_)};
}

DisjointPairs::Iterator& DisjointPairs::Iterator::operator++() {
  advance();
  return *this;
}

bool DisjointPairs::Iterator::operator==(const Iterator& other) const {
  if (done_ != other.done_) return false;
  return done_ || digits_ == other.digits_;
}

void DisjointPairs::Iterator::assign_digit(int index, std::uint8_t label) {
  const std::uint64_t bit = std::uint64_t{1} << index;
  a_ &= ~bit;
  b_ &= ~bit;
  digits_[static_cast<std::size_t>(index)] = label;
  if (label == 1) a_ |= bit;
  if (label == 2) b_ |= bit;
}

void DisjointPairs::Iterator::advance() {
  while (true) {
    int i = n_ - 1;
    while (i >= 0 && digits_[static_cast<std::size_t>(i)] == 2) {
      assign_digit(i, 0);
      --i;
    }
    if (i < 0) {
      done_ = true;
      return;
    }
    assign_digit(i, digits_[static_cast<std::size_t>(i)] + 1);
    if (a_ != 0 && b_ != 0 && std::countr_zero(a_) < std::countr_zero(b_)) return;
  }
}

std::vector<DisjointPair> disjoint_pairs(int n) {
  std::vector<DisjointPair> out;
  out.reserve(static_cast<std::size_t>(DisjointPairs::count(n)));
  for (const DisjointPair& pair : DisjointPairs(n)) out.push_back(pair);
  return out;
}

}  // namespace sia
