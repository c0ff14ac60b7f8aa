#pragma once

#include <cstdint>
#include <optional>

#include "sia/config.hpp"
#include "sia/index_set.hpp"
#include "sia/matrix.hpp"
#include "sia/pattern.hpp"

namespace sia {

/// Every pair of distinct rows shares a column with positive entries.
bool is_scrambling(const BooleanPattern& p);

/// For every disjoint nonempty pair (A, B): the one-stage consequent sets
/// intersect, or they are disjoint and their union is strictly larger than
/// A union B.
bool is_sarymsakov(const BooleanPattern& p);

/// Relaxation of the Sarymsakov condition with non-strict union growth.
/// Contains all permutation and doubly stochastic supports; closed under
/// products but not contained in the SIA class.
bool in_class_w(const BooleanPattern& p);

/// Powers of the matrix converge to a rank-one matrix. Decided through
/// k-stage consequent sets of index pairs: the matrix is SIA exactly when
/// every pair of indices has intersecting k-stage consequent sets for some
/// k <= n(n-1)/2. Since consequent sets of unions are unions of consequent
/// sets, checking index pairs settles every disjoint set pair as well.
/// Iteration stops early on intersection, and a repeated (image, image)
/// state proves the pair never meets.
bool is_sia(const BooleanPattern& p);

/// Smallest uniform stage at which the Sarymsakov-type condition holds,
/// maximized over all disjoint nonempty pairs. Empty for non-SIA patterns;
/// 1 exactly for Sarymsakov patterns; at most n(n-1)/2 otherwise.
std::optional<int> sia_index(const BooleanPattern& p);

/// Off-diagonal support is symmetric: p_ij > 0 iff p_ji > 0 for i != j.
bool is_pattern_symmetric(const BooleanPattern& p);

/// Some column is positive in every row.
bool has_positive_column(const BooleanPattern& p);

bool has_positive_diagonal(const BooleanPattern& p);

/// Column sums all within tol of 1.
bool is_doubly_stochastic(const StochasticMatrix& m, double tol = kDefaultRowSumTol);

/// Result of the exhaustive class-G membership test. `member` is empty when
/// the (2^n - 1)^n enumeration would exceed the budget before a decision.
struct ClassGResult {
  std::optional<bool> member;
  std::uint64_t patterns_examined = 0;
};

/// A pattern is in class G when it is SIA and left-composition with any SIA
/// pattern stays SIA. Universally quantified, so membership is decided by
/// enumerating all row-valid patterns; a counterexample short-circuits to a
/// definite "no".
ClassGResult in_class_g(const BooleanPattern& p, std::uint64_t budget = kDefaultClassGBudget);

struct ClassifyOptions {
  double eps = kDefaultEps;
  double row_sum_tol = kDefaultRowSumTol;
  std::uint64_t g_budget = kDefaultClassGBudget;
};

/// Full classification record for one matrix.
struct ClassReport {
  bool stochastic = false;
  bool doubly_stochastic = false;
  bool positive_diagonal = false;
  bool pattern_symmetric = false;
  bool scrambling = false;
  bool positive_column = false;
  bool sarymsakov = false;
  bool sia = false;
  std::optional<int> sia_index;
  bool class_w = false;
  std::optional<bool> class_g;
};

ClassReport classify(const StochasticMatrix& m, const ClassifyOptions& options = {});

/// Number of n x n patterns whose rows are all nonempty: (2^n - 1)^n,
/// saturating at the largest 64-bit value.
std::uint64_t row_valid_pattern_count(int n);

/// Pattern at a given position of the canonical enumeration (row 0 is the
/// most significant digit of the base-(2^n - 1) numeral).
BooleanPattern nth_row_valid_pattern(int n, std::uint64_t index);

enum class EnumerationMode { exact, sampled };

struct MaxIndexReport {
  int n = 0;
  int max_index = 0;
  EnumerationMode mode = EnumerationMode::exact;
  std::uint64_t patterns_examined = 0;
  std::optional<BooleanPattern> witness;
};

/// Largest SIA index over n x n patterns. Exact mode enumerates all
/// row-valid patterns (requires (2^n - 1)^n <= budget, else throws
/// BudgetExceededError) and may fan the scan out over several threads;
/// sampled mode draws `budget` random patterns under the seed. The witness
/// is the first pattern attaining the maximum in enumeration (or draw)
/// order, so results are deterministic either way.
MaxIndexReport max_sia_index(int n, EnumerationMode mode, std::uint64_t budget,
                             std::uint64_t seed = 0, int threads = 1);

}  // namespace sia
