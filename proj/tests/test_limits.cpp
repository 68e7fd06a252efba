#include <doctest.h>

#include <cmath>

#include "rmspec/error.hpp"
#include "rmspec/limits.hpp"

using namespace rmspec;

namespace {

MomentOptions wide() {
  MomentOptions o;
  o.volume_limits.max_exact_dim = 7;
  return o;
}

Rational dfact(int k) {
  Integer f(1);
  for (int j = 1; j <= k; ++j) f *= 2 * j - 1;
  return Rational(f);
}

}  // namespace

TEST_CASE("limit moment examples") {
  CHECK(*limit_moment(Family::toeplitz, 4).exact == Rational(8, 3));
  CHECK(*limit_moment(Family::hankel, 4).exact == 2);
  CHECK(*limit_moment(Family::hankel, 6).exact == Rational(11, 2));
  CHECK(*limit_moment(Family::hankel, 8).exact == Rational(281, 15));
  CHECK(*limit_moment(Family::markov, 2).exact == 2);
  CHECK(*limit_moment(Family::markov, 4).exact == 9);
}

TEST_CASE("derived golden values") {
  CHECK(*limit_moment(Family::toeplitz, 6).exact == 11);
  CHECK(*limit_moment(Family::toeplitz, 8).exact == Rational(908, 15));
  CHECK(*limit_moment(Family::toeplitz, 10).exact == 415);
  CHECK(*limit_moment(Family::hankel, 10).exact == Rational(2717, 36));
  CHECK(*limit_moment(Family::hankel, 12, wide()).exact == Rational(1052, 3));
  CHECK(*limit_moment(Family::markov, 12).exact == 42136);
}

TEST_CASE("table invariants") {
  for (auto f : {Family::toeplitz, Family::hankel, Family::markov, Family::semicircle,
                 Family::gaussian}) {
    const auto t = limit_moments(f, 7);
    CHECK(t.exact(0) == 1);
    for (int odd : {1, 3, 5, 7}) CHECK(t.exact(odd) == 0);
    CHECK(t.exact(2) == (f == Family::markov ? 2 : 1));
  }
}

TEST_CASE("errors") {
  MomentOptions mc;
  mc.method = MomentMethod::mc;
  CHECK_THROWS_AS(limit_moment(Family::markov, 4, mc), InvalidArgument);
  CHECK_THROWS_AS(limit_moment(Family::toeplitz, 12), CapacityError);
  CHECK_THROWS_AS(limit_moment(Family::markov, 18), CapacityError);
  CHECK_THROWS_AS(limit_moment(Family::hankel, -2), InvalidArgument);
  MomentOptions formula;
  formula.method = MomentMethod::formula;
  CHECK_THROWS_AS(limit_moment(Family::toeplitz, 4, formula), InvalidArgument);
  CHECK_THROWS_AS(parse_family("wishart"), InvalidArgument);
  CHECK_THROWS_AS(limit_moments(Family::hankel, 4).exact(6), InvalidArgument);
}

TEST_CASE("monte carlo moments bracket the exact values") {
  MomentOptions mc;
  mc.method = MomentMethod::mc;
  mc.mc_samples = 1000000;
  const auto t = limit_moment(Family::toeplitz, 4, mc);
  CHECK_FALSE(t.exact.has_value());
  CHECK(std::abs(t.value - 8.0 / 3.0) <= 3 * t.std_error);
  mc.mc_samples = 100000;
  const auto h = limit_moment(Family::hankel, 6, mc);
  CHECK(std::abs(h.value - 5.5) <= 3 * h.std_error);
  CHECK(h.std_error > 0);
}

TEST_CASE("reference moments") {
  CHECK(reference_moment(Family::semicircle, 4) == 2);
  CHECK(reference_moment(Family::gaussian, 6) == 15);
  CHECK(reference_moment(Family::semicircle, 0) == 1);
  CHECK(reference_moment(Family::semicircle, 12) == 132);
  CHECK(reference_moment(Family::gaussian, 5) == 0);
  CHECK_THROWS_AS(reference_moment(Family::toeplitz, 4), InvalidArgument);
}

TEST_CASE("cumulant conversions") {
  const auto sc = cumulants_to_moments(semicircle_cumulants(12), 12);
  for (int k = 0; k <= 6; ++k) CHECK(sc.exact(2 * k) == reference_moment(Family::semicircle, 2 * k));

  const auto g = cumulants_to_moments(gaussian_cumulants(12), 12);
  for (int k = 0; k <= 6; ++k) CHECK(g.exact(2 * k) == dfact(k));

  CumulantTable zero;
  for (int r = 1; r <= 4; ++r) zero.entries[2 * r] = 0;
  const auto z = cumulants_to_moments(zero, 8);
  CHECK(z.exact(0) == 1);
  for (int k = 1; k <= 4; ++k) CHECK(z.exact(2 * k) == 0);

  CHECK(cumulants_to_moments(markov_cumulants(4), 4).exact(4) == 9);

  CumulantTable partial;
  partial.entries[2] = 1;
  CHECK_THROWS_AS(cumulants_to_moments(partial, 4), InvalidArgument);
  CHECK_THROWS_AS(moments_to_cumulants(limit_moments(Family::hankel, 4), 6), InvalidArgument);
}

TEST_CASE("inverse conversions") {
  const auto gm = moments_to_cumulants(limit_moments(Family::gaussian, 12), 12);
  const auto gc = gaussian_cumulants(12);
  for (int r = 1; r <= 6; ++r) CHECK(gm.entries.at(2 * r) == gc.entries.at(2 * r));
  CHECK(gc.entries.at(2) == 1);
  CHECK(gc.entries.at(4) == 1);
  CHECK(gc.entries.at(6) == 4);
  CHECK(gc.entries.at(8) == 27);

  const auto sm = moments_to_cumulants(limit_moments(Family::semicircle, 8), 8);
  CHECK(sm.entries.at(2) == 1);
  for (int r = 2; r <= 4; ++r) CHECK(sm.entries.at(2 * r) == 0);

  const auto mk = moments_to_cumulants(limit_moments(Family::markov, 8), 8);
  const auto s = semicircle_cumulants(8);
  CHECK(mk.entries.at(2) == 2);
  for (int r = 1; r <= 4; ++r) {
    CHECK(mk.entries.at(2 * r) == s.entries.at(2 * r) + gc.entries.at(2 * r));
  }
}

TEST_CASE("round trip through order 12") {
  for (const auto& c : {markov_cumulants(12), gaussian_cumulants(12), semicircle_cumulants(12)}) {
    const auto back = moments_to_cumulants(cumulants_to_moments(c, 12), 12);
    CHECK(back.entries == c.entries);
  }
  const auto t = limit_moments(Family::toeplitz, 10);
  const auto again = cumulants_to_moments(moments_to_cumulants(t, 10), 10);
  for (int k = 0; k <= 5; ++k) CHECK(again.exact(2 * k) == t.exact(2 * k));
}

TEST_CASE("markov routes agree for 2k <= 12") {
  const auto words = limit_moments(Family::markov, 12);
  const auto cumulants = cumulants_to_moments(markov_cumulants(12), 12);
  for (int k = 0; k <= 6; ++k) CHECK(words.exact(2 * k) == cumulants.exact(2 * k));
}

TEST_CASE("moment matrix determinants") {
  const auto h = limit_moments(Family::hankel, 8);
  CHECK(hankel_moment_matrix_det(h, 3, true) == Rational(-73, 20));
  CHECK(hankel_moment_matrix_det(h, 1, false) == 1);
  const Rational d3 = hankel_moment_matrix_det(h, 3, false);
  CHECK(d3 == determinant({{1, 1, 2}, {1, 2, Rational(11, 2)}, {2, Rational(11, 2), Rational(281, 15)}}));
  CHECK(d3 > 0);
  CHECK_THROWS_AS(hankel_moment_matrix_det(h, 4, false), InvalidArgument);
  CHECK(determinant({{0, 1}, {1, 0}}) == -1);
  CHECK(determinant({{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("moment matrices are positive definite through n = 4") {
  for (auto f : {Family::toeplitz, Family::hankel, Family::markov}) {
    const auto t = limit_moments(f, 12, wide());
    for (int n = 1; n <= 4; ++n) CHECK_MESSAGE(hankel_moment_matrix_det(t, n, false) > 0, to_string(f));
  }
}

TEST_CASE("moment bounds for k <= 4") {
  for (auto f : {Family::toeplitz, Family::hankel}) {
    const auto t = limit_moments(f, 8);
    for (int k = 1; k <= 4; ++k) {
      CHECK(t.exact(2 * k) >= 1);
      CHECK(t.exact(2 * k) <= dfact(k));
    }
  }
}

TEST_CASE("cumulant and moment sandwiches for r <= 4") {
  const auto g = gaussian_cumulants(8);
  const auto m = markov_cumulants(8);
  const auto mm = limit_moments(Family::markov, 8);
  for (int r = 1; r <= 4; ++r) {
    CHECK(g.entries.at(2 * r) <= m.entries.at(2 * r));
    CHECK(m.entries.at(2 * r) <= 2 * g.entries.at(2 * r));
    const Rational g2r = dfact(r);
    CHECK(g2r <= mm.exact(2 * r));
    CHECK(mm.exact(2 * r) <= Rational(1 << (2 * r)) * g2r);
  }
}
