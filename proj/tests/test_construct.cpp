#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sia/classify.hpp"
#include "sia/construct.hpp"

using namespace sia;

namespace {

void check_expectation(const GalleryEntry& entry) {
  for (const StochasticMatrix& m : entry.matrices) {
    const ClassReport report = classify(m);
    const ClassExpectation& e = entry.expected;
    if (e.stochastic) CHECK(report.stochastic == *e.stochastic);
    if (e.doubly_stochastic) CHECK(report.doubly_stochastic == *e.doubly_stochastic);
    if (e.scrambling) CHECK(report.scrambling == *e.scrambling);
    if (e.sarymsakov) CHECK(report.sarymsakov == *e.sarymsakov);
    if (e.sia) CHECK(report.sia == *e.sia);
    if (e.pattern_symmetric) CHECK(report.pattern_symmetric == *e.pattern_symmetric);
    if (e.class_w) CHECK(report.class_w == *e.class_w);
    if (e.class_g) {
      REQUIRE(report.class_g.has_value());
      CHECK(*report.class_g == *e.class_g);
    }
    if (e.sia_index) {
      REQUIRE(report.sia_index.has_value());
      CHECK(*report.sia_index == *e.sia_index);
    }
  }
  if (entry.expected.product_sia) {
    REQUIRE(entry.matrices.size() == 2);
    const BooleanPattern left = pattern_of(entry.matrices[1]);
    const BooleanPattern right = pattern_of(entry.matrices[0]);
    CHECK(is_sia(bool_product(left, right)) == *entry.expected.product_sia);
  }
}

}  // namespace

TEST_CASE("gallery names and dimension validation") {
  const auto names = gallery_names();
  CHECK(names.size() == 8);
  for (const std::string& name : names) {
    const bool parametric =
        name == "companion" || name == "r_matrix" || name == "prop1_p" || name == "prop1_q";
    const GalleryEntry entry = gallery(name, parametric ? std::optional<int>(4) : std::nullopt);
    CHECK(entry.name == name);
    CHECK(!entry.matrices.empty());
  }
  CHECK_THROWS_AS(gallery("no_such_matrix"), UnknownNameError);
  CHECK_THROWS_AS(gallery("companion"), DimensionError);
  CHECK_THROWS_AS(gallery("companion", 2), DimensionError);
  CHECK_THROWS_AS(gallery("example1_p", 5), DimensionError);
  CHECK_THROWS_AS(gallery("patsym_pair", 3), DimensionError);
}

TEST_CASE("gallery entries match their asserted classifications") {
  check_expectation(gallery("example1_p"));
  check_expectation(gallery("patsym_p"));
  check_expectation(gallery("patsym_pair"));
  check_expectation(gallery("sec4_pair"));
  for (int n = 3; n <= 6; ++n) {
    check_expectation(gallery("companion", n));
    check_expectation(gallery("r_matrix", n));
    check_expectation(gallery("prop1_q", n));
  }
  // the exhaustive class-G check stays affordable through n = 4
  for (int n = 3; n <= 4; ++n) check_expectation(gallery("prop1_p", n));
}

TEST_CASE("prop1 matrices reproduce the non-SIA product at larger n") {
  for (int n = 3; n <= 5; ++n) {
    const BooleanPattern p = pattern_of(gallery("prop1_p", n).matrices.front());
    const BooleanPattern q = pattern_of(gallery("prop1_q", n).matrices.front());
    CHECK(is_sarymsakov(p));
    CHECK(is_sia(q));
    CHECK(!is_sia(bool_product(q, p)));
  }
}

TEST_CASE("breaker on the worked 3x3 example") {
  const BooleanPattern p = pattern_of(gallery("example1_p").matrices.front());
  const BreakerResult result = breaker(p);
  CHECK(result.witness_pair.a.indices_one_based() == std::vector<int>{2});
  CHECK(result.witness_pair.b.indices_one_based() == std::vector<int>{3});
  // witness unions match exactly, so q's own support needs a second stage
  CHECK(result.q_index == 2);
  // rows: unit mass on 2, unit mass on 3, uniform
  const double t = 1.0 / 3.0;
  const StochasticMatrix expected =
      StochasticMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {t, t, t}});
  CHECK(result.q == expected);
  CHECK(!is_sia(bool_product(p, pattern_of(result.q))));
  CHECK(!is_sia(bool_product(pattern_of(result.q), p)));
  // the pair {2} -> {2}, {3} -> {3} stays fixed under the product
  const BooleanPattern pq = bool_product(p, pattern_of(result.q));
  CHECK(consequent_set(pq, IndexSet(3, 0b010)) == IndexSet(3, 0b010));
  CHECK(consequent_set(pq, IndexSet(3, 0b100)) == IndexSet(3, 0b100));
}

TEST_CASE("breaker on the shift-register matrix at n = 4") {
  const BreakerResult result = breaker(pattern_of(gallery("companion", 4).matrices.front()));
  CHECK(result.witness_pair.a.indices_one_based() == std::vector<int>{3});
  CHECK(result.witness_pair.b.indices_one_based() == std::vector<int>{4});
  CHECK(result.q_index == 2);
  const StochasticMatrix expected = StochasticMatrix::from_rows(
      {{0.25, 0.25, 0.25, 0.25}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0.25, 0.25, 0.25, 0.25}});
  CHECK(result.q == expected);
}

TEST_CASE("breaker rejects inputs outside its domain") {
  CHECK_THROWS_AS(breaker(pattern_of(StochasticMatrix::uniform(3))), NotApplicableError);
  CHECK_THROWS_AS(breaker(oracles::cycle_pattern(3)), NotApplicableError);
  CHECK_THROWS_AS(breaker(pattern_of(gallery("prop1_p", 3).matrices.front())),
                  NotApplicableError);
  CHECK_THROWS_AS(breaker(BooleanPattern::identity(1)), NotApplicableError);
}

TEST_CASE("breaker invariants on random inputs") {
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 4;
    const BooleanPattern p = pattern_of(random_in_class(
        MatrixClass::sia_index_ge_2, n, static_cast<std::uint64_t>(trial) + 7000));
    const BreakerResult result = breaker(p);
    const BooleanPattern q = pattern_of(result.q);
    const std::optional<int> q_idx = sia_index(q);
    REQUIRE(q_idx.has_value());
    CHECK(*q_idx == result.q_index);
    CHECK(*q_idx <= 2);
    CHECK(!is_sia(bool_product(p, q)));
    CHECK(!is_sia(bool_product(q, p)));
  }
}

TEST_CASE("breaker defeats every 3x3 support of index >= 2") {
  int broken = 0;
  for (std::uint64_t idx = 0; idx < row_valid_pattern_count(3); ++idx) {
    const BooleanPattern p = nth_row_valid_pattern(3, idx);
    const std::optional<int> s = sia_index(p);
    if (!s.has_value() || *s < 2) continue;
    const BreakerResult result = breaker(p);
    const BooleanPattern q = pattern_of(result.q);
    CHECK(!is_sia(bool_product(p, q)));
    CHECK(!is_sia(bool_product(q, p)));
    CHECK(sia_index(q) == result.q_index);
    ++broken;
  }
  CHECK(broken > 0);
}

TEST_CASE("r_matrix products with Sarymsakov factors stay Sarymsakov") {
  for (int n = 3; n <= 6; ++n) {
    const BooleanPattern r = pattern_of(gallery("r_matrix", n).matrices.front());
    CHECK(is_sarymsakov(bool_product(r, r)));
    for (int trial = 0; trial < 8; ++trial) {
      const BooleanPattern p = pattern_of(random_in_class(
          MatrixClass::sarymsakov, n, static_cast<std::uint64_t>(50 * n + trial)));
      CHECK(is_sarymsakov(bool_product(r, p)));
      CHECK(is_sarymsakov(bool_product(p, r)));
    }
  }
}

TEST_CASE("random_in_class returns members of the requested class") {
  for (int trial = 0; trial < 5; ++trial) {
    const std::uint64_t seed = static_cast<std::uint64_t>(trial) + 42;
    CHECK(is_scrambling(pattern_of(random_in_class(MatrixClass::scrambling, 4, seed))));
    CHECK(is_sarymsakov(pattern_of(random_in_class(MatrixClass::sarymsakov, 4, seed))));
    CHECK(is_sia(pattern_of(random_in_class(MatrixClass::sia, 4, seed))));
    CHECK(in_class_w(pattern_of(random_in_class(MatrixClass::class_w, 4, seed))));
    const std::optional<int> s =
        sia_index(pattern_of(random_in_class(MatrixClass::sia_index_ge_2, 4, seed)));
    REQUIRE(s.has_value());
    CHECK(*s >= 2);

    const StochasticMatrix ds = random_in_class(MatrixClass::doubly_stochastic, 5, seed);
    CHECK(is_doubly_stochastic(ds, 1e-9));
    const StochasticMatrix dsd =
        random_in_class(MatrixClass::doubly_stochastic_positive_diagonal, 5, seed);
    CHECK(is_doubly_stochastic(dsd, 1e-9));
    CHECK(has_positive_diagonal(pattern_of(dsd)));
    const StochasticMatrix ps = random_in_class(MatrixClass::pattern_symmetric_sia, 4, seed);
    CHECK(is_pattern_symmetric(pattern_of(ps)));
    CHECK(is_sia(pattern_of(ps)));
  }
}

TEST_CASE("random_in_class is deterministic under the seed") {
  const StochasticMatrix a = random_in_class(MatrixClass::sarymsakov, 5, 123);
  const StochasticMatrix b = random_in_class(MatrixClass::sarymsakov, 5, 123);
  CHECK(a == b);
  const StochasticMatrix c = random_in_class(MatrixClass::sarymsakov, 5, 124);
  CHECK(!(a == c));
}

TEST_CASE("random_in_class gives up when the class is empty") {
  // every 2x2 SIA support has index 1, so index >= 2 can never be hit
  CHECK_THROWS_AS(random_in_class(MatrixClass::sia_index_ge_2, 2, 1, 200),
                  ExhaustedTriesError);
}

TEST_CASE("matrix class names round-trip") {
  for (MatrixClass cls :
       {MatrixClass::stochastic, MatrixClass::scrambling, MatrixClass::sarymsakov,
        MatrixClass::sia, MatrixClass::sia_index_ge_2, MatrixClass::class_w,
        MatrixClass::doubly_stochastic, MatrixClass::doubly_stochastic_positive_diagonal,
        MatrixClass::pattern_symmetric_sia}) {
    const auto parsed = matrix_class_from_string(to_string(cls));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == cls);
  }
  CHECK(!matrix_class_from_string("nonsense").has_value());
}
