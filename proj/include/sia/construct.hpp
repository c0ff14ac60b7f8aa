#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sia/classify.hpp"
#include "sia/index_set.hpp"
#include "sia/matrix.hpp"
#include "sia/pattern.hpp"

namespace sia {

/// Companion matrix built for an SIA pattern that is not Sarymsakov: a
/// stochastic matrix whose support has SIA index at most 2 while both
/// products with the input lose the SIA property.
struct BreakerResult {
  StochasticMatrix q;
  DisjointPair witness_pair;
  // SIA index of q's support: 1 when the witness consequent union is
  // strictly smaller than the pair union, 2 when the two match exactly.
  int q_index = 0;
};

/// Builds the breaker for p. The witness is the first pair in canonical
/// enumeration order whose one-stage consequent sets are disjoint without
/// union growth. Rows indexed by the consequent set of the first witness
/// set spread mass 1/|a| over a; rows indexed by the consequent set of the
/// second spread 1/|b| over b; all other rows are uniform.
/// Throws NotApplicableError unless p is SIA with index >= 2.
BreakerResult breaker(const BooleanPattern& p);

/// Classification fragment asserted for a gallery entry. `product_sia`
/// refers to the left product (second matrix applied after the first) of a
/// two-matrix entry.
struct ClassExpectation {
  std::optional<bool> stochastic;
  std::optional<bool> doubly_stochastic;
  std::optional<bool> scrambling;
  std::optional<bool> sarymsakov;
  std::optional<bool> sia;
  std::optional<bool> pattern_symmetric;
  std::optional<bool> class_w;
  std::optional<bool> class_g;
  std::optional<int> sia_index;
  std::optional<bool> product_sia;
};

/// A named example matrix (or pair) with the classifications it must have.
struct GalleryEntry {
  std::string name;
  int n = 0;
  std::vector<StochasticMatrix> matrices;
  ClassExpectation expected;
};

/// Stable names: example1_p, companion, r_matrix, prop1_p, prop1_q,
/// patsym_p, patsym_pair, sec4_pair. Parametric entries (companion,
/// r_matrix, prop1_p, prop1_q) require n >= 3; fixed entries reject any
/// mismatching n.
GalleryEntry gallery(std::string_view name, std::optional<int> n = std::nullopt);

std::vector<std::string> gallery_names();

enum class MatrixClass {
  stochastic,
  scrambling,
  sarymsakov,
  sia,
  sia_index_ge_2,
  class_w,
  doubly_stochastic,
  doubly_stochastic_positive_diagonal,
  pattern_symmetric_sia,
};

std::string to_string(MatrixClass cls);
std::optional<MatrixClass> matrix_class_from_string(std::string_view name);

/// Rejection-samples random stochastic matrices until the classifier
/// accepts. Sparsity: each off-diagonal entry present with probability 0.5,
/// the diagonal with 0.7, rows then normalized; doubly stochastic samples
/// are convex combinations of random permutation matrices. Deterministic
/// under the seed. Throws ExhaustedTriesError when max_tries rejections
/// pass without a hit.
StochasticMatrix random_in_class(MatrixClass cls, int n, std::uint64_t seed,
                                 int max_tries = 10000);

}  // namespace sia
