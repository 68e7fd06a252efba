#include <doctest.h>

#include <cmath>

#include "rmspec/error.hpp"
#include "rmspec/eulerian.hpp"

using namespace rmspec;

namespace {

Integer factorial(long n) {
  Integer f(1);
  for (long j = 2; j <= n; ++j) f *= j;
  return f;
}

}  // namespace

TEST_CASE("eulerian numbers") {
  CHECK(eulerian_number(3, 2) == 4);
  for (long n = 1; n <= 10; ++n) CHECK(eulerian_number(n, 1) == 1);
  Integer row(0);
  for (long m = 1; m <= 5; ++m) row += eulerian_number(5, m);
  CHECK(row == 120);
  CHECK(eulerian_number(5, 3) == 66);
  CHECK(eulerian_number(4, 0) == 0);
  CHECK(eulerian_number(4, 5) == 0);
  CHECK_THROWS_AS(eulerian_number(0, 1), InvalidArgument);
  for (long n = 2; n <= 9; ++n) {
    for (long m = 1; m <= n; ++m) CHECK(eulerian_number(n, m) == eulerian_number(n, n + 1 - m));
  }
}

TEST_CASE("single slab volume is A(n,m)/n! for n <= 6") {
  for (long n = 1; n <= 6; ++n) {
    for (long m = 1; m <= n; ++m) {
      const auto s = single_slab_system(n, m);
      CHECK(s.free_vars().size() == static_cast<std::size_t>(n));
      const Rational expected = Rational(eulerian_number(n, m)) / Rational(factorial(n));
      CHECK(*volume_exact(s).exact == expected);
    }
  }
  CHECK_THROWS_AS(single_slab_system(3, 0), InvalidArgument);
  CHECK_THROWS_AS(single_slab_system(3, 4), InvalidArgument);
}

TEST_CASE("integral representation") {
  CHECK(slab_volume_integral(3, 2) == doctest::Approx(4.0 / 6.0).epsilon(1e-7));
  CHECK(slab_volume_integral(1, 1) == doctest::Approx(1.0).epsilon(1e-7));
  for (long n = 1; n <= 6; ++n) {
    for (long m = 1; m <= n; ++m) {
      const double expected =
          Rational(Rational(eulerian_number(n, m)) / Rational(factorial(n))).get_d();
      CHECK(std::abs(slab_volume_integral(n, m) - expected) <= 1e-6);
    }
  }
  CHECK_THROWS_AS(slab_volume_integral(2, 3), InvalidArgument);
}

TEST_CASE("integral reports non-convergence") {
  CHECK_THROWS_AS(slab_volume_integral(1, 1, 1e-30), NumericError);
}
