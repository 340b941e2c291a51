#include <doctest.h>

#include <array>
#include <cmath>

#include "oracles.hpp"
#include "polyconv/constructions.hpp"
#include "polyconv/errors.hpp"
#include "polyconv/slices.hpp"
#include "polyconv/varopoulos.hpp"

using namespace polyconv;

namespace {

const MultilinearPoly kX123(3, {{0b111, 1.0}});

}  // namespace

TEST_CASE("trilinear tuple of x1x2x3") {
  const CommutingTuple t = build_trilinear(kX123);
  CHECK(t.d == 8);
  const std::array<int, 3> seq{0, 1, 2};
  CHECK(tuple_moment(t, seq) == 1.0);
  for (int i = 0; i < 3; ++i) {
    const std::array<int, 1> one{i};
    CHECK(tuple_moment(t, one) == 0.0);
    CHECK((t.matrices[i] * t.matrices[i]).isZero(0.0));
  }
  const TupleReport r = verify_tuple(t, kX123);
  CHECK(r.passed());
  for (const auto& c : r.checks) CHECK(c.violation == 0.0);
  CHECK(respects_grading(t));
}

TEST_CASE("trilinear tuple rejects Delta = 0") {
  CHECK_THROWS_AS(build_trilinear(MultilinearPoly(4)), PreconditionError);
}

TEST_CASE("trilinear moments reproduce coefficients over Delta") {
  const MultilinearPoly f = random_cubic(7, 3);
  const double d = delta(f);
  const CommutingTuple t = build_trilinear(f);
  CHECK(t.d == 16);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) {
        const std::array<int, 3> seq{i, j, k};
        const double expected =
            (i != j && j != k && i != k) ? f.coefficient(bit(i) | bit(j) | bit(k)) / d : 0.0;
        CHECK(tuple_moment(t, seq) == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
      }
}

TEST_CASE("verify_tuple catches injected faults") {
  CommutingTuple t = build_trilinear(kX123);
  t.matrices[1] *= 1.5;
  const TupleReport scaled = verify_tuple(t, kX123);
  CHECK_FALSE(scaled.at("contraction").passed);
  CHECK(scaled.at("contraction").observed == doctest::Approx(1.5));

  CommutingTuple same = build_trilinear(kX123);
  same.u = same.v;
  CHECK_FALSE(verify_tuple(same, kX123).at("orthogonal_uv").passed);
}

TEST_CASE("scaling covariance of the trilinear tuple") {
  const MultilinearPoly f = random_cubic(6, 4);
  const CommutingTuple a = build_trilinear(f);
  const CommutingTuple b = build_trilinear(f.scaled(3.0));
  for (int i = 0; i < 6; ++i) {
    CHECK((a.matrices[i] - b.matrices[i]).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("grading nilpotency is exact") {
  const CommutingTuple t = build_trilinear(random_cubic(5, 2));
  CHECK(respects_grading(t));
  CHECK(words_vanish_exactly(t, 4));
  CHECK_FALSE(words_vanish_exactly(t, 3));
}

TEST_CASE("quartic moment examples") {
  const CommutingTuple t = build_trilinear(kX123);
  CHECK(quartic_moment(t, kX123) == doctest::Approx(1.0).epsilon(1e-12));
  const MultilinearPoly two = kX123.scaled(2.0);
  CHECK(quartic_moment(build_trilinear(two), two) == doctest::Approx(2.0).epsilon(1e-12));
  const MultilinearPoly f = random_cubic(8, 1);
  double by_oracle = 0.0;
  for (int i = 0; i < 8; ++i) {
    by_oracle = std::max(by_oracle, oracle::power_iteration_norm(slice(f, i).matrix));
  }
  CHECK(quartic_moment(build_trilinear(f), f) ==
        doctest::Approx(oracle::binomial3(8) / by_oracle).epsilon(1e-8));
  CHECK_THROWS_AS(quartic_moment(t, random_cubic(4, 1)), DimensionError);
}

TEST_CASE("four-index vanishing") {
  const MultilinearPoly f = random_cubic(6, 9);
  const CommutingTuple ext = extend_with_identity_and_zero(build_trilinear(f));
  const int pad = 7;
  const std::array<int, 4> repeated{0, 0, 1, 2};
  const std::array<int, 4> padded{1, 2, 3, pad};
  const std::array<int, 4> distinct{1, 2, 3, 4};
  CHECK(tuple_moment(ext, repeated) == 0.0);
  CHECK(tuple_moment(ext, padded) == 0.0);
  CHECK(tuple_moment(ext, distinct) == 0.0);
  const VanishingReport r = four_index_vanishing(ext);
  CHECK(r.exhaustive);
  CHECK(r.passed);
  CHECK(r.sequences_checked + r.sequences_skipped == 8ull * 8 * 8 * 8);
  // {0} u S sequences: 20 subsets times 4! orders
  CHECK(r.sequences_skipped == 20ull * 24);
}

TEST_CASE("four-index vanishing samples above n = 8") {
  const CommutingTuple ext = extend_with_identity_and_zero(build_trilinear(random_cubic(10, 1)));
  const VanishingReport r = four_index_vanishing(ext, 3, 20000);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.passed);
  CHECK(r.sequences_checked + r.sequences_skipped == 20000);
}

TEST_CASE("CHSH tuple") {
  const CommutingTuple t = build_chsh();
  CHECK(t.d == 6);
  CHECK(t.alphabet_size() == 5);
  const std::array<int, 2> s13{0, 2};
  const std::array<int, 2> s11{0, 0};
  CHECK(tuple_moment(t, s13) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(tuple_moment(t, s11) == 0.0);
  for (int i = 0; i < 5; ++i) {
    const std::array<int, 2> with_zero{i, 4};
    CHECK(tuple_moment(t, with_zero) == 0.0);
    CHECK((t.matrices[i] * t.matrices[i]).isZero(0.0));
  }
  const MultilinearPoly f = chsh_form();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const std::array<int, 2> s{i, j};
      CHECK(tuple_moment(t, s) ==
            doctest::Approx(std::sqrt(2.0) * f.coefficient(bit(i) | bit(j))).epsilon(1e-14));
    }
  CHECK(respects_grading(t));
  CHECK(words_vanish_exactly(t, 3));
}
