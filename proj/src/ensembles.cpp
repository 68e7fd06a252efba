#include "rmspec/ensembles.hpp"

#include <cmath>

#include "rmspec/error.hpp"
#include "rmspec/rng.hpp"

namespace rmspec {

namespace {

double quantize(double x) { return std::ldexp(std::nearbyint(std::ldexp(x, 32)), -32); }

double standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return draw_entry(EntryDistribution::gaussian(), seed, stream, index);
}

void fill_upper_triangle(Matrix& m, const EntryDistribution& dist, std::uint64_t seed) {
  const std::size_t n = m.rows();
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double x = draw_entry(dist, seed, 0, index++);
      m(i, j) = x;
      m(j, i) = x;
    }
  }
}

}  // namespace

std::string to_string(Ensemble e) {
  switch (e) {
    case Ensemble::hankel: return "hankel";
    case Ensemble::toeplitz: return "toeplitz";
    case Ensemble::markov: return "markov";
    case Ensemble::wigner: return "wigner";
    case Ensemble::wigner_plus_diag: return "wigner_plus_diag";
  }
  return "?";
}

Ensemble parse_ensemble(const std::string& name) {
  for (auto e : {Ensemble::hankel, Ensemble::toeplitz, Ensemble::markov, Ensemble::wigner,
                 Ensemble::wigner_plus_diag}) {
    if (to_string(e) == name) return e;
  }
  throw InvalidArgument("unknown ensemble '" + name + "'");
}

Rational EntryDistribution::mean() const {
  return tag == Tag::shifted_gaussian ? Rational(shift) : Rational(0);
}

Rational EntryDistribution::variance() const { return Rational(1); }

std::string EntryDistribution::name() const {
  switch (tag) {
    case Tag::rademacher: return "rademacher";
    case Tag::gaussian: return "gaussian";
    case Tag::triangular: return "triangular";
    case Tag::shifted_gaussian: return "shifted_gaussian";
  }
  return "?";
}

EntryDistribution parse_distribution(const std::string& name, double mean) {
  if (name == "shifted_gaussian") {
    if (!std::isfinite(mean)) throw InvalidArgument("mean must be finite");
    return EntryDistribution::shifted_gaussian(mean);
  }
  if (mean != 0.0) throw InvalidArgument("--mean only applies to shifted_gaussian");
  if (name == "rademacher") return EntryDistribution::rademacher();
  if (name == "gaussian") return EntryDistribution::gaussian();
  if (name == "triangular") return EntryDistribution::triangular();
  throw InvalidArgument("unknown distribution '" + name + "'");
}

double draw_entry(const EntryDistribution& dist, std::uint64_t seed, std::uint64_t stream,
                  std::uint64_t index) {
  const auto bits = random_block(seed, stream, index);
  switch (dist.tag) {
    case EntryDistribution::Tag::rademacher:
      return (bits[0] >> 63) ? 1.0 : -1.0;
    case EntryDistribution::Tag::gaussian:
      return quantize(normal_quantile(bits_to_open_unit(bits[0])));
    case EntryDistribution::Tag::triangular:
      return quantize((bits_to_open_unit(bits[0]) - bits_to_open_unit(bits[1])) *
                      std::sqrt(6.0));
    case EntryDistribution::Tag::shifted_gaussian:
      return quantize(dist.shift + normal_quantile(bits_to_open_unit(bits[0])));
  }
  return 0.0;
}

EnsembleSample sample_matrix(Ensemble ensemble, std::size_t n, const EntryDistribution& dist,
                             std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("matrix size must be positive");
  EnsembleSample s{ensemble, n, dist, seed, Matrix::square(n)};
  Matrix& m = s.matrix;
  switch (ensemble) {
    case Ensemble::hankel: {
      std::vector<double> x(2 * n - 1);
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = draw_entry(dist, seed, 0, k);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = x[i + j];
      }
      break;
    }
    case Ensemble::toeplitz: {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = draw_entry(dist, seed, 0, k);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = x[i > j ? i - j : j - i];
      }
      break;
    }
    case Ensemble::markov:
      fill_upper_triangle(m, dist, seed);
      for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += (j == i) ? 0.0 : m(i, j);
        m(i, i) = -row;
      }
      break;
    case Ensemble::wigner:
      fill_upper_triangle(m, dist, seed);
      break;
    case Ensemble::wigner_plus_diag: {
      fill_upper_triangle(m, dist, seed);
      const double root_n = std::sqrt(static_cast<double>(n));
      const double xi = standard_normal(seed, 2, 0);
      for (std::size_t i = 0; i < n; ++i) m(i, i) = root_n * standard_normal(seed, 1, i) + xi;
      break;
    }
  }
  return s;
}

Matrix nonsymmetric_toeplitz(const EnsembleSample& hankel) {
  if (hankel.ensemble != Ensemble::hankel) {
    throw InvalidArgument("nonsymmetric_toeplitz needs a hankel sample");
  }
  const std::size_t n = hankel.n;
  const Matrix& h = hankel.matrix;
  // y(m) is the Hankel stream entry X_m, m = 1..2n-1.
  auto y = [&](std::size_t m) { return m <= n ? h(0, m - 1) : h(m - n, n - 1); };
  Matrix r = Matrix::square(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r(i, j) = y(i + n - j);
  }
  return r;
}

std::vector<VertexPair> vertex_pairs(std::size_t n) {
  std::vector<VertexPair> out;
  for (std::size_t lo = 1; lo <= n; ++lo) {
    for (std::size_t hi = lo + 1; hi <= n; ++hi) out.push_back({lo, hi});
  }
  return out;
}

int pair_trace(const VertexPair& a, const VertexPair& b) {
  if (a == b) return -2;
  if (a.lo == b.lo || a.hi == b.hi) return -1;
  if (a.lo == b.hi || a.hi == b.lo) return 1;
  return 0;
}

PairMatrix markov_q(const VertexPair& a, const VertexPair& b, std::size_t n) {
  for (const auto& p : {a, b}) {
    if (p.lo < 1 || p.lo >= p.hi || p.hi > n) {
      throw InvalidArgument("vertex pair must satisfy 1 <= lo < hi <= n");
    }
  }
  PairMatrix out{Matrix::square(n), pair_trace(a, b)};
  Matrix& q = out.q;
  q(a.hi - 1, b.hi - 1) += -1.0;
  q(a.lo - 1, b.lo - 1) += -1.0;
  q(a.hi - 1, b.lo - 1) += 1.0;
  q(a.lo - 1, b.hi - 1) += 1.0;
  return out;
}

double row_sum_statistic(const EnsembleSample& sample) {
  if (sample.ensemble != Ensemble::markov && sample.ensemble != Ensemble::wigner) {
    throw InvalidArgument("row_sum_statistic needs a markov or wigner sample");
  }
  const std::size_t n = sample.n;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += (j == i) ? 0.0 : sample.matrix(i, j);
    total += row * row;
  }
  return total / (static_cast<double>(n) * static_cast<double>(n));
}

}  // namespace rmspec
