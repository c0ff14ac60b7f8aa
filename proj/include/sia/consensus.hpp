#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sia/classify.hpp"
#include "sia/config.hpp"
#include "sia/matrix.hpp"
#include "sia/pattern.hpp"

namespace sia {

/// Closure of a generator list under the Boolean pattern product, i.e. the
/// supports of every finite left product over the generators. `words` holds
/// one shortest producing word per element, oldest factor first, with ties
/// broken toward the lexicographically smaller word; replaying a word
/// multiplies each later generator onto the left.
struct ClosureReport {
  std::vector<BooleanPattern> generators;
  std::vector<BooleanPattern> elements;  // breadth-first discovery order
  std::vector<std::vector<int>> words;   // generator indices, oldest first
  bool truncated = false;
  std::uint64_t budget = 0;
};

/// Breadth-first closure; stops with `truncated` set once the element count
/// would exceed the budget.
ClosureReport semigroup_closure(const std::vector<BooleanPattern>& generators,
                                std::uint64_t budget = kDefaultClosureBudget);

/// Pattern of the left product named by a word (oldest factor first).
BooleanPattern replay_word(const std::vector<BooleanPattern>& generators,
                           const std::vector<int>& word);

/// Uniform horizons of a consensus set: beyond nu every product is
/// scrambling, beyond mu some column is positive, beyond alpha every
/// product is Sarymsakov.
struct Horizons {
  int nu = 0;
  int mu = 0;
  int alpha = 0;
};

/// Level sets (patterns of all length-k products) form an eventually
/// periodic sequence over a finite power set; the horizons are read off the
/// preperiod and one full cycle. Requires a complete closure whose elements
/// are all SIA; throws NotConsensusSetError otherwise.
Horizons horizons(const ClosureReport& closure);

struct ConsensusDecision {
  std::optional<bool> is_consensus_set;     // empty when truncated undecided
  std::optional<std::vector<int>> witness_word;  // oldest factor first
  std::optional<Horizons> horizon_values;
  std::uint64_t closure_size = 0;
  bool truncated = false;
};

/// Exact decision for a finite matrix set: the set is a consensus set
/// exactly when every pattern in the closure is SIA. On failure the witness
/// is the shortest word (lexicographically smallest among shortest) whose
/// product pattern is not SIA.
ConsensusDecision decide_consensus(const std::vector<StochasticMatrix>& matrices,
                                   std::uint64_t budget = kDefaultClosureBudget,
                                   double eps = kDefaultEps);

}  // namespace sia
