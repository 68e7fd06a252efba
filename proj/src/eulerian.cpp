#include "rmspec/eulerian.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "rmspec/error.hpp"

namespace rmspec {

Integer eulerian_number(long n, long m) {
  if (n < 1) throw InvalidArgument("eulerian_number needs n >= 1");
  if (m < 1 || m > n) return Integer(0);
  // row[j] = A(r, j) for the current r, j = 0..r+1 (zero padded).
  std::vector<Integer> row(static_cast<std::size_t>(n) + 2, 0);
  row[1] = 1;
  for (long r = 2; r <= n; ++r) {
    std::vector<Integer> next(row.size(), 0);
    for (long j = 1; j <= r; ++j) {
      next[j] = (r - j + 1) * row[j - 1] + j * row[j];
    }
    row = std::move(next);
  }
  return row[m];
}

SlabSystem single_slab_system(long n, long m) {
  if (n < 1 || m < 1 || m > n) {
    throw InvalidArgument("single_slab_system needs 1 <= m <= n");
  }
  AffineForm form{Rational(0), std::vector<Rational>(static_cast<std::size_t>(n))};
  for (long j = 0; j < n; ++j) form.coeffs[j] = (j < m) ? 1 : -1;
  return SlabSystem::general(static_cast<std::size_t>(n), {form});
}

namespace {

using boost::math::constants::pi;

double sinc_power(double t, long power) {
  const double s = std::abs(t) < 1e-8 ? 1.0 : std::sin(t) / t;
  return std::pow(s, static_cast<double>(power));
}

// Mean of sin^{n+1}(t) cos(c t) over one period; the trapezoid rule with
// more nodes than the trigonometric degree is exact.
double period_mean(long n, long c) {
  const long nodes = 4 * (n + 1 + std::abs(c)) + 16;
  double acc = 0.0;
  for (long j = 0; j < nodes; ++j) {
    const double t = 2.0 * pi<double>() * static_cast<double>(j) / static_cast<double>(nodes);
    acc += std::pow(std::sin(t), static_cast<double>(n + 1)) *
           std::cos(static_cast<double>(c) * t);
  }
  return acc / static_cast<double>(nodes);
}

}  // namespace

double slab_volume_integral(long n, long m, double tolerance) {
  if (n < 1 || m < 1 || m > n) {
    throw InvalidArgument("slab_volume_integral needs 1 <= m <= n");
  }
  const long c = n + 1 - 2 * m;
  const double freq = static_cast<double>(c);
  auto integrand = [&](double t) { return sinc_power(t, n + 1) * std::cos(freq * t); };
  const double mean = period_mean(n, c);

  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double body = 0.0;
  long done = 0;  // half-periods integrated so far
  auto extend_to = [&](long half_periods) {
    for (; done < half_periods; ++done) {
      const double a = pi<double>() * static_cast<double>(done);
      body += GK::integrate(integrand, a, a + pi<double>(), 0, 0);
    }
  };
  auto estimate = [&](long periods) {
    extend_to(2 * periods);
    const double T = 2.0 * pi<double>() * static_cast<double>(periods);
    const double tail = mean * std::pow(T, -static_cast<double>(n)) / static_cast<double>(n);
    return 2.0 / pi<double>() * (body + tail);
  };

  double previous = estimate(128);
  for (long periods = 256; periods <= (1L << 16); periods *= 2) {
    const double current = estimate(periods);
    if (std::abs(current - previous) <= tolerance) return current;
    previous = current;
  }
  std::ostringstream msg;
  msg << "slab_volume_integral(" << n << ", " << m
      << ") did not reach tolerance " << tolerance;
  throw NumericError(msg.str());
}

}  // namespace rmspec
