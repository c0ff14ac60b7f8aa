#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "oracles.hpp"
#include "sia/consensus.hpp"
#include "sia/construct.hpp"
#include "sia/rng.hpp"

using namespace sia;

namespace {

/// Direct level-by-level horizon oracle for a single generator: the first
/// power from which every later power (up to a cycle of boolean powers)
/// satisfies the predicate.
template <typename Pred>
int single_generator_horizon(const BooleanPattern& p, Pred pred) {
  std::vector<BooleanPattern> powers{p};
  while (true) {
    const BooleanPattern next = bool_product(p, powers.back());
    if (std::find(powers.begin(), powers.end(), next) != powers.end()) break;
    powers.push_back(next);
  }
  int horizon = static_cast<int>(powers.size()) + 1;
  for (int k = static_cast<int>(powers.size()); k >= 1; --k) {
    if (!pred(powers[static_cast<std::size_t>(k - 1)])) break;
    horizon = k;
  }
  return horizon;
}

}  // namespace

TEST_CASE("closure of a cyclic permutation") {
  const BooleanPattern c = oracles::cycle_pattern(3);
  const ClosureReport closure = semigroup_closure({c});
  CHECK(closure.elements.size() == 3);  // c, c^2, identity
  CHECK(!closure.truncated);
  CHECK(std::find(closure.elements.begin(), closure.elements.end(),
                  BooleanPattern::identity(3)) != closure.elements.end());
  for (std::size_t i = 0; i < closure.elements.size(); ++i) {
    CHECK(replay_word(closure.generators, closure.words[i]) == closure.elements[i]);
  }
}

TEST_CASE("closure of an idempotent full pattern") {
  const BooleanPattern full = pattern_of(StochasticMatrix::uniform(3));
  const ClosureReport closure = semigroup_closure({full});
  CHECK(closure.elements.size() == 1);
  CHECK(closure.words.front() == std::vector<int>{0});
}

TEST_CASE("closure budget truncation") {
  const BooleanPattern c = oracles::cycle_pattern(4);
  const ClosureReport closure = semigroup_closure({c}, 2);
  CHECK(closure.truncated);
  CHECK(closure.elements.size() == 2);
  const ConsensusDecision decision =
      decide_consensus({StochasticMatrix::uniform(3), StochasticMatrix::identity(3)}, 1);
  // identity never enters the truncated closure, so the answer is unknown
  CHECK(!decision.is_consensus_set.has_value());
  CHECK(decision.truncated);
}

TEST_CASE("closure generators must agree in dimension") {
  CHECK_THROWS_AS(
      semigroup_closure({BooleanPattern::identity(2), BooleanPattern::identity(3)}),
      DimensionError);
  CHECK_THROWS_AS(semigroup_closure({}), Error);
}

TEST_CASE("two-matrix counterexample set is not a consensus set") {
  const GalleryEntry pair = gallery("sec4_pair");
  const ConsensusDecision decision = decide_consensus(pair.matrices);
  REQUIRE(decision.is_consensus_set.has_value());
  CHECK(!*decision.is_consensus_set);
  REQUIRE(decision.witness_word.has_value());
  CHECK(decision.witness_word->size() == 2);
  // lexicographically smallest shortest witness: first generator, then second
  CHECK(*decision.witness_word == std::vector<int>{0, 1});
  std::vector<BooleanPattern> gens;
  for (const auto& m : pair.matrices) gens.push_back(pattern_of(m));
  CHECK(!is_sia(replay_word(gens, *decision.witness_word)));
  CHECK(!decision.horizon_values.has_value());
}

TEST_CASE("pattern-symmetric counterexample pair is not a consensus set") {
  const ConsensusDecision decision = decide_consensus(gallery("patsym_pair").matrices);
  REQUIRE(decision.is_consensus_set.has_value());
  CHECK(!*decision.is_consensus_set);
  REQUIRE(decision.witness_word.has_value());
  std::vector<BooleanPattern> gens;
  for (const auto& m : gallery("patsym_pair").matrices) gens.push_back(pattern_of(m));
  CHECK(!is_sia(replay_word(gens, *decision.witness_word)));
}

TEST_CASE("a single positive matrix is a consensus set with unit horizons") {
  const ConsensusDecision decision = decide_consensus({StochasticMatrix::uniform(4)});
  REQUIRE(decision.is_consensus_set.has_value());
  CHECK(*decision.is_consensus_set);
  REQUIRE(decision.horizon_values.has_value());
  CHECK(decision.horizon_values->nu == 1);
  CHECK(decision.horizon_values->mu == 1);
  CHECK(decision.horizon_values->alpha == 1);
}

TEST_CASE("a single scrambling generator has scrambling horizon one") {
  for (int trial = 0; trial < 8; ++trial) {
    const StochasticMatrix m = random_in_class(MatrixClass::scrambling, 3 + trial % 3,
                                               static_cast<std::uint64_t>(trial) + 9090);
    const ConsensusDecision decision = decide_consensus({m});
    REQUIRE(decision.horizon_values.has_value());
    CHECK(decision.horizon_values->nu == 1);
  }
}

TEST_CASE("horizons of the worked 3x3 example") {
  const StochasticMatrix p = gallery("example1_p").matrices.front();
  const ConsensusDecision decision = decide_consensus({p});
  REQUIRE(decision.is_consensus_set.has_value());
  REQUIRE(*decision.is_consensus_set);
  REQUIRE(decision.horizon_values.has_value());
  const BooleanPattern pat = pattern_of(p);
  CHECK(decision.horizon_values->nu ==
        single_generator_horizon(pat, [](const BooleanPattern& q) { return is_scrambling(q); }));
  CHECK(decision.horizon_values->mu == single_generator_horizon(pat, [](const BooleanPattern& q) {
          return has_positive_column(q);
        }));
  CHECK(decision.horizon_values->alpha ==
        single_generator_horizon(pat, [](const BooleanPattern& q) { return is_sarymsakov(q); }));
  // the first scrambling power of this matrix is the square
  CHECK(decision.horizon_values->nu == 2);
}

TEST_CASE("horizons of the shift-register matrix match the power oracle") {
  for (int n = 3; n <= 5; ++n) {
    const StochasticMatrix p = gallery("companion", n).matrices.front();
    const ConsensusDecision decision = decide_consensus({p});
    REQUIRE(decision.is_consensus_set.has_value());
    REQUIRE(*decision.is_consensus_set);
    REQUIRE(decision.horizon_values.has_value());
    const BooleanPattern pat = pattern_of(p);
    CHECK(decision.horizon_values->alpha ==
          single_generator_horizon(pat,
                                   [](const BooleanPattern& q) { return is_sarymsakov(q); }));
    CHECK(decision.horizon_values->nu ==
          single_generator_horizon(pat,
                                   [](const BooleanPattern& q) { return is_scrambling(q); }));
  }
}

TEST_CASE("horizons audit through one full cycle of level sets") {
  Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 3;
    std::vector<StochasticMatrix> mats;
    for (int k = 0; k < 2 + trial % 2; ++k) {
      mats.push_back(random_in_class(MatrixClass::sarymsakov, n,
                                     static_cast<std::uint64_t>(trial * 10 + k) + 4000));
    }
    const ConsensusDecision decision = decide_consensus(mats);
    REQUIRE(decision.is_consensus_set.has_value());
    REQUIRE(*decision.is_consensus_set);
    REQUIRE(decision.horizon_values.has_value());
    const Horizons h = *decision.horizon_values;

    std::vector<BooleanPattern> gens;
    for (const auto& m : mats) gens.push_back(pattern_of(m));
    // sample random words at the horizon lengths and a few beyond
    for (int extra = 0; extra < 3; ++extra) {
      for (int len : {h.nu + extra, h.mu + extra, h.alpha + extra}) {
        std::vector<int> word(static_cast<std::size_t>(len));
        for (int& w : word) w = rng.below(static_cast<int>(gens.size()));
        const BooleanPattern product = replay_word(gens, word);
        if (len >= h.nu) CHECK(is_scrambling(product));
        if (len >= h.mu) CHECK(has_positive_column(product));
        if (len >= h.alpha) CHECK(is_sarymsakov(product));
      }
    }
  }
}

TEST_CASE("finite Sarymsakov sets always decide true") {
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + trial % 3;
    std::vector<StochasticMatrix> mats;
    for (int k = 0; k < 3; ++k) {
      mats.push_back(random_in_class(MatrixClass::sarymsakov, n,
                                     static_cast<std::uint64_t>(trial * 7 + k) + 5000));
    }
    const ConsensusDecision decision = decide_consensus(mats);
    REQUIRE(decision.is_consensus_set.has_value());
    CHECK(*decision.is_consensus_set);
    CHECK(decision.horizon_values.has_value());
  }
}

TEST_CASE("Sarymsakov sets extended by the index-2 closure matrix decide true") {
  for (int n = 3; n <= 5; ++n) {
    std::vector<StochasticMatrix> mats;
    for (int k = 0; k < 3; ++k) {
      mats.push_back(random_in_class(MatrixClass::sarymsakov, n,
                                     static_cast<std::uint64_t>(n * 100 + k) + 6000));
    }
    mats.push_back(gallery("r_matrix", n).matrices.front());
    const ConsensusDecision decision = decide_consensus(mats);
    REQUIRE(decision.is_consensus_set.has_value());
    CHECK(*decision.is_consensus_set);
  }
}

TEST_CASE("a pattern with its breaker decides false") {
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 3;
    const StochasticMatrix p = random_in_class(MatrixClass::sia_index_ge_2, n,
                                               static_cast<std::uint64_t>(trial) + 8000);
    const BreakerResult broken = breaker(pattern_of(p));
    const ConsensusDecision decision = decide_consensus({p, broken.q});
    REQUIRE(decision.is_consensus_set.has_value());
    CHECK(!*decision.is_consensus_set);
    REQUIRE(decision.witness_word.has_value());
    std::vector<BooleanPattern> gens{pattern_of(p), pattern_of(broken.q)};
    CHECK(!is_sia(replay_word(gens, *decision.witness_word)));
  }
}

TEST_CASE("closure agrees with explicit word enumeration") {
  Rng rng(97);
  for (int trial = 0; trial < 20; ++trial) {
    const int gen_count = 2 + trial % 2;
    std::vector<BooleanPattern> gens;
    for (int g = 0; g < gen_count; ++g) gens.push_back(oracles::random_pattern(rng, 3));
    const ClosureReport closure = semigroup_closure(gens);
    REQUIRE(!closure.truncated);

    std::unordered_map<BooleanPattern, std::size_t, BooleanPatternHash> word_min_length;
    std::vector<int> first_bad_word;
    const int max_len = 4;
    // enumerate every word up to max_len in (length, lex) order
    std::vector<std::vector<int>> frontier{{}};
    for (int len = 1; len <= max_len; ++len) {
      std::vector<std::vector<int>> next;
      for (const std::vector<int>& word : frontier) {
        for (int g = 0; g < gen_count; ++g) {
          std::vector<int> extended = word;
          extended.push_back(g);
          next.push_back(extended);
        }
      }
      // lexicographic order within the level: oldest-first words sorted
      std::sort(next.begin(), next.end());
      for (const std::vector<int>& word : next) {
        const BooleanPattern product = replay_word(gens, word);
        const bool known =
            std::find(closure.elements.begin(), closure.elements.end(), product) !=
            closure.elements.end();
        CHECK(known);  // every finite product support lies in the closure
        word_min_length.emplace(product, word.size());
        if (first_bad_word.empty() && !is_sia(product)) first_bad_word = word;
      }
      frontier = std::move(next);
    }
    // recorded words are shortest
    for (std::size_t i = 0; i < closure.elements.size(); ++i) {
      const auto it = word_min_length.find(closure.elements[i]);
      if (it != word_min_length.end()) {
        CHECK(closure.words[i].size() == it->second);
      }
    }
    // the decision's witness is the lex-first shortest non-SIA word
    std::vector<StochasticMatrix> mats;  // numeric carriers on the same supports
    for (const BooleanPattern& g : gens) {
      std::vector<double> entries(9, 0.0);
      for (int i = 0; i < 3; ++i) {
        const int row_bits = static_cast<int>(g.row_bits(i));
        const int count = std::popcount(static_cast<unsigned>(row_bits));
        for (int j = 0; j < 3; ++j) {
          if ((row_bits >> j) & 1) entries[static_cast<std::size_t>(i * 3 + j)] = 1.0 / count;
        }
      }
      mats.emplace_back(3, entries);
    }
    const ConsensusDecision decision = decide_consensus(mats);
    if (!first_bad_word.empty()) {
      REQUIRE(decision.is_consensus_set.has_value());
      CHECK(!*decision.is_consensus_set);
      REQUIRE(decision.witness_word.has_value());
      CHECK(decision.witness_word->size() <= first_bad_word.size());
      if (decision.witness_word->size() == first_bad_word.size()) {
        CHECK(*decision.witness_word == first_bad_word);
      }
    }
  }
}

TEST_CASE("horizons reject truncated or non-consensus closures") {
  const ClosureReport truncated = semigroup_closure({oracles::cycle_pattern(4)}, 2);
  CHECK_THROWS_AS(horizons(truncated), Error);
  const ClosureReport cyclic = semigroup_closure({oracles::cycle_pattern(3)});
  CHECK_THROWS_AS(horizons(cyclic), NotConsensusSetError);
}
