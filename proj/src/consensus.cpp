#include "sia/consensus.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>

namespace sia {

ClosureReport semigroup_closure(const std::vector<BooleanPattern>& generators,
                                std::uint64_t budget) {
  if (generators.empty()) throw Error("closure requires at least one generator");
  if (budget < 1) throw Error("closure budget must be >= 1");
  const int n = generators.front().dim();
  for (const BooleanPattern& g : generators) {
    if (g.dim() != n) throw DimensionError("generators must share a dimension");
  }

  ClosureReport report;
  report.generators = generators;
  report.budget = budget;

  std::unordered_map<BooleanPattern, std::size_t, BooleanPatternHash> seen;
  auto try_add = [&](const BooleanPattern& p, std::vector<int> word) -> bool {
    if (seen.contains(p)) return true;
    if (report.elements.size() >= budget) {
      report.truncated = true;
      return false;
    }
    seen.emplace(p, report.elements.size());
    report.elements.push_back(p);
    report.words.push_back(std::move(word));
    return true;
  };

  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (!try_add(generators[g], {static_cast<int>(g)})) return report;
  }
  for (std::size_t head = 0; head < report.elements.size(); ++head) {
    for (std::size_t g = 0; g < generators.size(); ++g) {
      // left-product order: the new factor multiplies from the left
      const BooleanPattern next = bool_product(generators[g], report.elements[head]);
      std::vector<int> word = report.words[head];
      word.push_back(static_cast<int>(g));
      if (!try_add(next, std::move(word))) return report;
    }
  }
  return report;
}

BooleanPattern replay_word(const std::vector<BooleanPattern>& generators,
                           const std::vector<int>& word) {
  if (word.empty()) throw Error("cannot replay an empty word");
  for (int g : word) {
    if (g < 0 || g >= static_cast<int>(generators.size())) {
      throw Error("word references generator " + std::to_string(g + 1) +
                  " outside the generator list");
    }
  }
  BooleanPattern product = generators[static_cast<std::size_t>(word.front())];
  for (std::size_t i = 1; i < word.size(); ++i) {
    product = bool_product(generators[static_cast<std::size_t>(word[i])], product);
  }
  return product;
}

Horizons horizons(const ClosureReport& closure) {
  if (closure.truncated) throw Error("horizons require a complete closure");
  if (closure.elements.empty()) throw Error("horizons require a nonempty closure");

  std::unordered_map<BooleanPattern, int, BooleanPatternHash> id_of;
  for (std::size_t i = 0; i < closure.elements.size(); ++i) {
    id_of.emplace(closure.elements[i], static_cast<int>(i));
  }
  for (const BooleanPattern& element : closure.elements) {
    if (!is_sia(element)) {
      throw NotConsensusSetError("closure contains a non-SIA product pattern");
    }
  }

  const std::size_t element_count = closure.elements.size();
  std::vector<bool> elem_scrambling(element_count);
  std::vector<bool> elem_positive_column(element_count);
  std::vector<bool> elem_sarymsakov(element_count);
  for (std::size_t i = 0; i < element_count; ++i) {
    elem_scrambling[i] = is_scrambling(closure.elements[i]);
    elem_positive_column[i] = has_positive_column(closure.elements[i]);
    elem_sarymsakov[i] = is_sarymsakov(closure.elements[i]);
  }

  // Transitions inside the closure: id of g * element.
  const std::size_t gen_count = closure.generators.size();
  std::vector<std::vector<int>> step(gen_count, std::vector<int>(element_count, -1));
  for (std::size_t g = 0; g < gen_count; ++g) {
    for (std::size_t e = 0; e < element_count; ++e) {
      const BooleanPattern next = bool_product(closure.generators[g], closure.elements[e]);
      step[g][e] = id_of.at(next);  // complete closure, so the product is present
    }
  }

  // Level k holds the ids of all length-k product patterns.
  std::vector<int> level;
  for (std::size_t g = 0; g < gen_count; ++g) {
    level.push_back(id_of.at(closure.generators[g]));
  }
  std::sort(level.begin(), level.end());
  level.erase(std::unique(level.begin(), level.end()), level.end());

  std::map<std::vector<int>, int> level_first_seen;
  std::vector<bool> all_scrambling;  // flag per stored level, index 0 = length 1
  std::vector<bool> all_positive_column;
  std::vector<bool> all_sarymsakov;

  auto record_level = [&](const std::vector<int>& ids) {
    bool scr = true;
    bool pos = true;
    bool sar = true;
    for (int id : ids) {
      scr = scr && elem_scrambling[static_cast<std::size_t>(id)];
      pos = pos && elem_positive_column[static_cast<std::size_t>(id)];
      sar = sar && elem_sarymsakov[static_cast<std::size_t>(id)];
    }
    all_scrambling.push_back(scr);
    all_positive_column.push_back(pos);
    all_sarymsakov.push_back(sar);
  };

  int cycle_start = -1;  // 0-based index of the first repeated level
  constexpr int kMaxLevels = 1 << 20;
  for (int k = 0; k < kMaxLevels; ++k) {
    const auto [it, inserted] = level_first_seen.emplace(level, k);
    if (!inserted) {
      cycle_start = it->second;
      break;
    }
    record_level(level);
    std::vector<int> next;
    next.reserve(level.size() * gen_count);
    for (int id : level) {
      for (std::size_t g = 0; g < gen_count; ++g) next.push_back(step[g][id]);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  if (cycle_start < 0) throw Error("level-set iteration exceeded the internal cap");

  const int stored = static_cast<int>(all_scrambling.size());
  auto horizon_from = [&](const std::vector<bool>& flags) -> int {
    // Levels from cycle_start on recur forever, so they must all satisfy
    // the flag; before that, the horizon is the last failing level plus one.
    for (int k = cycle_start; k < stored; ++k) {
      if (!flags[static_cast<std::size_t>(k)]) {
        throw NotConsensusSetError("no uniform horizon exists for this closure");
      }
    }
    int first_good = cycle_start;
    while (first_good > 0 && flags[static_cast<std::size_t>(first_good - 1)]) {
      --first_good;
    }
    return first_good + 1;  // report 1-based product lengths
  };

  Horizons h;
  h.nu = horizon_from(all_scrambling);
  h.mu = horizon_from(all_positive_column);
  h.alpha = horizon_from(all_sarymsakov);
  return h;
}

ConsensusDecision decide_consensus(const std::vector<StochasticMatrix>& matrices,
                                   std::uint64_t budget, double eps) {
  if (matrices.empty()) throw Error("consensus decision requires at least one matrix");
  std::vector<BooleanPattern> generators;
  generators.reserve(matrices.size());
  for (const StochasticMatrix& m : matrices) generators.push_back(pattern_of(m, eps));

  const ClosureReport closure = semigroup_closure(generators, budget);
  ConsensusDecision decision;
  decision.closure_size = closure.elements.size();
  decision.truncated = closure.truncated;

  for (std::size_t i = 0; i < closure.elements.size(); ++i) {
    if (!is_sia(closure.elements[i])) {
      decision.is_consensus_set = false;
      decision.witness_word = closure.words[i];
      return decision;
    }
  }
  if (closure.truncated) return decision;  // undecided within budget

  decision.is_consensus_set = true;
  decision.horizon_values = horizons(closure);
  return decision;
}

}  // namespace sia
