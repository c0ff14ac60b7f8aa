#include "sia/construct.hpp"

#include <bit>
#include <utility>

#include "sia/rng.hpp"

namespace sia {

namespace {

std::uint64_t consequent_bits(const BooleanPattern& p, std::uint64_t a) {
  std::uint64_t out = 0;
  while (a != 0) {
    out |= p.row_bits(std::countr_zero(a));
    a &= a - 1;
  }
  return out;
}

}  // namespace

BreakerResult breaker(const BooleanPattern& p) {
  const int n = p.dim();
  if (n < 2 || !is_sia(p)) {
    throw NotApplicableError("breaker requires an SIA pattern");
  }
  // First canonical pair whose consequent sets are disjoint without strict
  // union growth. Its existence is exactly the failure of the Sarymsakov
  // condition, so SIA inputs with index >= 2 always provide one.
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t fa = 0;
  std::uint64_t fb = 0;
  bool found = false;
  for (const DisjointPair& pair : DisjointPairs(n)) {
    const std::uint64_t ca = consequent_bits(p, pair.a.bits());
    const std::uint64_t cb = consequent_bits(p, pair.b.bits());
    if ((ca & cb) == 0 && std::popcount(ca | cb) <= pair.a.count() + pair.b.count()) {
      a = pair.a.bits();
      b = pair.b.bits();
      fa = ca;
      fb = cb;
      found = true;
      break;
    }
  }
  if (!found) {
    throw NotApplicableError("breaker requires SIA index >= 2; input is Sarymsakov");
  }

  const double mass_a = 1.0 / static_cast<double>(std::popcount(a));
  const double mass_b = 1.0 / static_cast<double>(std::popcount(b));
  const double mass_uniform = 1.0 / static_cast<double>(n);
  std::vector<double> entries(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    double mass = mass_uniform;
    std::uint64_t columns = universe_mask(n);
    if ((fa & bit) != 0) {
      mass = mass_a;
      columns = a;
    } else if ((fb & bit) != 0) {
      mass = mass_b;
      columns = b;
    }
    std::uint64_t rest = columns;
    while (rest != 0) {
      const int j = std::countr_zero(rest);
      rest &= rest - 1;
      entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(j)] = mass;
    }
  }

  // When the witness unions match exactly, the pair (F(a), F(b)) of the
  // result needs a second stage, so its index is exactly 2; under a strict
  // drop every pair settles in one stage and the result is Sarymsakov.
  BreakerResult result{StochasticMatrix(n, std::move(entries)),
                       DisjointPair{IndexSet(n, a), IndexSet(n, b)},
                       std::popcount(fa | fb) == std::popcount(a | b) ? 2 : 1};
  return result;
}

namespace {

std::vector<double> uniform_row(int n) {
  return std::vector<double>(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
}

std::vector<double> unit_row(int n, int index) {
  std::vector<double> row(static_cast<std::size_t>(n), 0.0);
  row[static_cast<std::size_t>(index)] = 1.0;
  return row;
}

int required_dim(std::string_view name, std::optional<int> n, int fixed = 0) {
  if (fixed > 0) {
    if (n.has_value() && *n != fixed) {
      throw DimensionError(std::string(name) + " is fixed at n = " + std::to_string(fixed));
    }
    return fixed;
  }
  if (!n.has_value()) {
    throw DimensionError(std::string(name) + " is parametric; a dimension is required");
  }
  if (*n < 3 || *n > kMaxDim) {
    throw DimensionError(std::string(name) + " requires n in [3, " +
                         std::to_string(kMaxDim) + "]");
  }
  return *n;
}

StochasticMatrix example1_matrix() {
  const double third = 1.0 / 3.0;
  return StochasticMatrix::from_rows({{third, third, third}, {1, 0, 0}, {0, 1, 0}});
}

/// Uniform first row, then each row passes all mass to the previous index.
StochasticMatrix companion_matrix(int n) {
  std::vector<std::vector<double>> rows;
  rows.push_back(uniform_row(n));
  for (int i = 1; i < n; ++i) rows.push_back(unit_row(n, i - 1));
  return StochasticMatrix::from_rows(rows);
}

/// Uniform rows except rows 2 and 3, which shift mass to columns 1 and 2.
StochasticMatrix r_matrix(int n) {
  std::vector<std::vector<double>> rows;
  rows.push_back(uniform_row(n));
  rows.push_back(unit_row(n, 0));
  rows.push_back(unit_row(n, 1));
  for (int i = 3; i < n; ++i) rows.push_back(uniform_row(n));
  return StochasticMatrix::from_rows(rows);
}

StochasticMatrix prop1_p_matrix(int n) {
  std::vector<std::vector<double>> rows;
  std::vector<double> first(static_cast<std::size_t>(n), 0.0);
  first[0] = 0.5;
  first[1] = 0.5;
  rows.push_back(first);
  rows.push_back(unit_row(n, 2));
  for (int i = 2; i < n; ++i) rows.push_back(uniform_row(n));
  return StochasticMatrix::from_rows(rows);
}

StochasticMatrix prop1_q_matrix(int n) {
  std::vector<std::vector<double>> rows;
  rows.push_back(unit_row(n, 0));
  rows.push_back(unit_row(n, 0));
  rows.push_back(unit_row(n, 1));
  for (int i = 3; i < n; ++i) rows.push_back(uniform_row(n));
  return StochasticMatrix::from_rows(rows);
}

StochasticMatrix patsym_p_matrix() {
  const double half = 0.5;
  const double third = 1.0 / 3.0;
  return StochasticMatrix::from_rows({{0, 1, 0, 0},
                                      {half, 0, half, 0},
                                      {0, third, third, third},
                                      {0, 0, 1, 0}});
}

StochasticMatrix patsym_partner_matrix() {
  const double half = 0.5;
  const double third = 1.0 / 3.0;
  return StochasticMatrix::from_rows({{0, half, 0, half},
                                      {1, 0, 0, 0},
                                      {0, 0, 0, 1},
                                      {third, 0, third, third}});
}

StochasticMatrix sec4_partner_matrix() {
  const double third = 1.0 / 3.0;
  return StochasticMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {third, third, third}});
}

}  // namespace

GalleryEntry gallery(std::string_view name, std::optional<int> n) {
  GalleryEntry entry;
  entry.name = std::string(name);
  if (name == "example1_p") {
    entry.n = required_dim(name, n, 3);
    entry.matrices.push_back(example1_matrix());
    entry.expected.sia = true;
    entry.expected.sarymsakov = false;
    entry.expected.sia_index = 2;
  } else if (name == "companion") {
    entry.n = required_dim(name, n);
    entry.matrices.push_back(companion_matrix(entry.n));
    entry.expected.sia = true;
    entry.expected.sia_index = entry.n - 1;
  } else if (name == "r_matrix") {
    entry.n = required_dim(name, n);
    entry.matrices.push_back(r_matrix(entry.n));
    entry.expected.class_w = true;
    entry.expected.sarymsakov = false;
    entry.expected.sia_index = 2;
  } else if (name == "prop1_p") {
    entry.n = required_dim(name, n);
    entry.matrices.push_back(prop1_p_matrix(entry.n));
    entry.expected.sarymsakov = true;
    entry.expected.class_g = false;
  } else if (name == "prop1_q") {
    entry.n = required_dim(name, n);
    entry.matrices.push_back(prop1_q_matrix(entry.n));
    entry.expected.sia = true;
  } else if (name == "patsym_p") {
    entry.n = required_dim(name, n, 4);
    entry.matrices.push_back(patsym_p_matrix());
    entry.expected.pattern_symmetric = true;
    entry.expected.sia = true;
    entry.expected.sarymsakov = false;
    entry.expected.sia_index = 2;
  } else if (name == "patsym_pair") {
    entry.n = required_dim(name, n, 4);
    entry.matrices.push_back(patsym_p_matrix());
    entry.matrices.push_back(patsym_partner_matrix());
    entry.expected.pattern_symmetric = true;
    entry.expected.product_sia = false;
  } else if (name == "sec4_pair") {
    entry.n = required_dim(name, n, 3);
    entry.matrices.push_back(example1_matrix());
    entry.matrices.push_back(sec4_partner_matrix());
    entry.expected.sia = true;
    entry.expected.product_sia = false;
  } else {
    throw UnknownNameError("unknown gallery name: " + std::string(name));
  }
  return entry;
}

std::vector<std::string> gallery_names() {
  return {"example1_p", "companion", "r_matrix",   "prop1_p",
          "prop1_q",    "patsym_p",  "patsym_pair", "sec4_pair"};
}

std::string to_string(MatrixClass cls) {
  switch (cls) {
    case MatrixClass::stochastic: return "stochastic";
    case MatrixClass::scrambling: return "scrambling";
    case MatrixClass::sarymsakov: return "sarymsakov";
    case MatrixClass::sia: return "sia";
    case MatrixClass::sia_index_ge_2: return "sia_index_ge_2";
    case MatrixClass::class_w: return "class_w";
    case MatrixClass::doubly_stochastic: return "doubly_stochastic";
    case MatrixClass::doubly_stochastic_positive_diagonal:
      return "doubly_stochastic_positive_diagonal";
    case MatrixClass::pattern_symmetric_sia: return "pattern_symmetric_sia";
  }
  return "unknown";
}

std::optional<MatrixClass> matrix_class_from_string(std::string_view name) {
  for (MatrixClass cls :
       {MatrixClass::stochastic, MatrixClass::scrambling, MatrixClass::sarymsakov,
        MatrixClass::sia, MatrixClass::sia_index_ge_2, MatrixClass::class_w,
        MatrixClass::doubly_stochastic, MatrixClass::doubly_stochastic_positive_diagonal,
        MatrixClass::pattern_symmetric_sia}) {
    if (to_string(cls) == name) return cls;
  }
  return std::nullopt;
}

namespace {

StochasticMatrix sample_general(Rng& rng, int n) {
  std::vector<double> entries(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    std::uint64_t mask = 0;
    do {
      mask = 0;
      for (int j = 0; j < n; ++j) {
        if (rng.chance(i == j ? 0.7 : 0.5)) mask |= std::uint64_t{1} << j;
      }
    } while (mask == 0);
    double sum = 0.0;
    std::uint64_t rest = mask;
    while (rest != 0) {
      const int j = std::countr_zero(rest);
      rest &= rest - 1;
      const double v = rng.range(0.1, 1.0);
      entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(j)] = v;
      sum += v;
    }
    rest = mask;
    while (rest != 0) {
      const int j = std::countr_zero(rest);
      rest &= rest - 1;
      entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(j)] /= sum;
    }
  }
  return StochasticMatrix(n, std::move(entries));
}

StochasticMatrix sample_doubly(Rng& rng, int n, bool positive_diagonal) {
  std::vector<std::vector<int>> perms;
  if (positive_diagonal) {
    std::vector<int> id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 0);
    perms.push_back(std::move(id));
  }
  for (int k = 0; k < n; ++k) perms.push_back(rng.permutation(n));
  std::vector<double> weights(perms.size());
  double total = 0.0;
  for (double& w : weights) {
    w = rng.range(0.2, 1.0);
    total += w;
  }
  std::vector<double> entries(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (std::size_t k = 0; k < perms.size(); ++k) {
    const double w = weights[k] / total;
    for (int i = 0; i < n; ++i) {
      entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(perms[k][static_cast<std::size_t>(i)])] += w;
    }
  }
  return StochasticMatrix(n, std::move(entries));
}

StochasticMatrix sample_pattern_symmetric(Rng& rng, int n) {
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    if (rng.chance(0.7)) masks[static_cast<std::size_t>(i)] |= std::uint64_t{1} << i;
    for (int j = i + 1; j < n; ++j) {
      if (rng.chance(0.5)) {
        masks[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
        masks[static_cast<std::size_t>(j)] |= std::uint64_t{1} << i;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    // a lone diagonal entry keeps the support symmetric and the row valid
    if (masks[static_cast<std::size_t>(i)] == 0) {
      masks[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;
    }
  }
  std::vector<double> entries(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    std::uint64_t rest = masks[static_cast<std::size_t>(i)];
    while (rest != 0) {
      const int j = std::countr_zero(rest);
      rest &= rest - 1;
      const double v = rng.range(0.1, 1.0);
      entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(j)] = v;
      sum += v;
    }
    rest = masks[static_cast<std::size_t>(i)];
    while (rest != 0) {
      const int j = std::countr_zero(rest);
      rest &= rest - 1;
      entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(j)] /= sum;
    }
  }
  return StochasticMatrix(n, std::move(entries));
}

bool accepts(MatrixClass cls, const StochasticMatrix& m) {
  switch (cls) {
    case MatrixClass::stochastic:
    case MatrixClass::doubly_stochastic:
    case MatrixClass::doubly_stochastic_positive_diagonal:
      return true;  // guaranteed by construction
    case MatrixClass::scrambling:
      return is_scrambling(pattern_of(m));
    case MatrixClass::sarymsakov:
      return is_sarymsakov(pattern_of(m));
    case MatrixClass::sia:
      return is_sia(pattern_of(m));
    case MatrixClass::sia_index_ge_2: {
      const std::optional<int> s = sia_index(pattern_of(m));
      return s.has_value() && *s >= 2;
    }
    case MatrixClass::class_w:
      return in_class_w(pattern_of(m));
    case MatrixClass::pattern_symmetric_sia:
      return is_sia(pattern_of(m));
  }
  return false;
}

}  // namespace

StochasticMatrix random_in_class(MatrixClass cls, int n, std::uint64_t seed, int max_tries) {
  if (n < 1 || n > kMaxDim) throw DimensionError("dimension out of range");
  if (max_tries < 1) throw Error("max_tries must be positive");
  Rng rng(seed);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    StochasticMatrix candidate = [&] {
      switch (cls) {
        case MatrixClass::doubly_stochastic:
          return sample_doubly(rng, n, false);
        case MatrixClass::doubly_stochastic_positive_diagonal:
          return sample_doubly(rng, n, true);
        case MatrixClass::pattern_symmetric_sia:
          return sample_pattern_symmetric(rng, n);
        default:
          return sample_general(rng, n);
      }
    }();
    if (accepts(cls, candidate)) return candidate;
  }
  throw ExhaustedTriesError("no " + to_string(cls) + " matrix found at n = " +
                            std::to_string(n) + " after " + std::to_string(max_tries) +
                            " tries");
}

}  // namespace sia
