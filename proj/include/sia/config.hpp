#pragma once

#include <cstdint>

namespace sia {

/// Entries at or below this threshold are treated as zero when a numeric
/// matrix is reduced to its support pattern.
inline constexpr double kDefaultEps = 1e-12;

/// Allowed deviation of a row (or column) sum from 1.
inline constexpr double kDefaultRowSumTol = 1e-9;

/// Defect threshold below which a simulated product counts as converged.
inline constexpr double kDefaultConvergenceTol = 1e-10;

/// Maximum number of elements a semigroup closure may accumulate.
inline constexpr std::uint64_t kDefaultClosureBudget = 1'000'000;

/// Maximum number of patterns the exhaustive class-G test may enumerate.
/// (2^n - 1)^n patterns exist at dimension n, so the default covers n <= 4.
inline constexpr std::uint64_t kDefaultClassGBudget = 100'000;

/// Index sets are backed by one machine word.
inline constexpr int kMaxDim = 64;

/// Tests that enumerate all 3^n disjoint set pairs are capped here.
inline constexpr int kMaxEnumDim = 16;

}  // namespace sia
