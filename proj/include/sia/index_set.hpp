#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "sia/config.hpp"
#include "sia/errors.hpp"

namespace sia {

/// Subset of {0, ..., n-1} backed by a single machine word.
/// Indices are 0-based here; conversion to the 1-based convention happens
/// only at the I/O boundary.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(int universe, std::uint64_t bits);

  static IndexSet empty_set(int universe);
  static IndexSet full_set(int universe);
  static IndexSet singleton(int universe, int index);
  static IndexSet from_indices(int universe, const std::vector<int>& indices);

  int universe() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  int count() const { return std::popcount(bits_); }
  bool contains(int index) const;
  bool intersects(const IndexSet& other) const { return (bits_ & other.bits_) != 0; }
  bool is_subset_of(const IndexSet& other) const { return (bits_ & ~other.bits_) == 0; }
  IndexSet complement() const;

  std::vector<int> indices() const;
  std::vector<int> indices_one_based() const;

  friend IndexSet operator|(const IndexSet& a, const IndexSet& b);
  friend IndexSet operator&(const IndexSet& a, const IndexSet& b);
  bool operator==(const IndexSet&) const = default;

 private:
  int n_ = 0;
  std::uint64_t bits_ = 0;
};

/// All indices of an n-element universe as a bit mask.
std::uint64_t universe_mask(int n);

/// Unordered pair of disjoint nonempty index sets. The lexicographically
/// smaller set is stored first; for disjoint sets that is the one holding
/// the smallest index of the union.
struct DisjointPair {
  IndexSet a;
  IndexSet b;

  static DisjointPair canonical(const IndexSet& x, const IndexSet& y);
  bool operator==(const DisjointPair&) const = default;
};

/// Enumerates every unordered pair of disjoint nonempty subsets of
/// {0, ..., n-1} exactly once. Each index carries one of three labels
/// (first set, second set, neither); label vectors are swept as ascending
/// base-3 numerals with index 0 as the most significant digit, skipping
/// assignments where either set is empty or the pair is not canonical.
/// The total is (3^n - 2^(n+1) + 1) / 2.
class DisjointPairs {
 public:
  explicit DisjointPairs(int n);

  static std::uint64_t count(int n);

  class Iterator {
   public:
    using value_type = DisjointPair;
    using difference_type = std::ptrdiff_t;

    Iterator() = default;
    explicit Iterator(int n);

    DisjointPair operator*() const;
    Iterator& operator++();
    bool operator==(const Iterator& other) const;

   private:
    void advance();
    void assign_digit(int index, std::uint8_t label);

    int n_ = 0;
    std::vector<std::uint8_t> digits_;
    std::uint64_t a_ = 0;
    std::uint64_t b_ = 0;
    bool done_ = true;
  };

  Iterator begin() const { return Iterator(n_); }
  Iterator end() const { return Iterator(); }
  std::uint64_t size() const { return count(n_); }

 private:
  int n_;
};

/// Materialized enumeration; prefer iterating DisjointPairs for large n.
std::vector<DisjointPair> disjoint_pairs(int n);

}  // namespace sia
