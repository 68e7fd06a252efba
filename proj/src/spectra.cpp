#include "rmspec/spectra.hpp"

#include <lapacke.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <mutex>
#include <thread>

#include "rmspec/error.hpp"
#include "rmspec/rng.hpp"

namespace rmspec {

namespace {

constexpr double kQlEpsilon = 0x1.0p-46;
constexpr int kQlMaxSweeps = 30;

// Runs body(i) for i in [0, count) on up to `threads` workers; the first
// exception is rethrown.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void check_symmetric(const Matrix& a) {
  if (!a.is_square()) throw InvalidArgument("matrix must be square");
  const std::size_t n = a.rows();
  double scale = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) {
    const double x = a.data()[i];
    if (!std::isfinite(x)) throw InvalidArgument("matrix has non-finite entries");
    scale = std::max(scale, std::abs(x));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * scale) {
        throw InvalidArgument("matrix is not symmetric");
      }
    }
  }
}

double scale_factor(Scaling s, std::size_t n) {
  return s == Scaling::sqrt_n ? std::sqrt(static_cast<double>(n)) : static_cast<double>(n);
}

double power_mean(const std::vector<double>& xs, int r) {
  double acc = 0.0;
  for (double x : xs) acc += std::pow(x, r);
  return acc / static_cast<double>(xs.size());
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
  const std::size_t n = d.size();
  if (n == 0) return d;
  if (e.size() + 1 != n) throw InvalidArgument("off-diagonal length must be n - 1");
  e.push_back(0.0);
  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        if (std::abs(e[m]) <= kQlEpsilon * (std::abs(d[m]) + std::abs(d[m + 1]))) break;
      }
      if (m == l) break;
      if (++sweeps > kQlMaxSweeps) {
        throw NumericError("QL iteration did not converge for eigenvalue " +
                           std::to_string(l));
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> eigvalsh(const Matrix& a) {
  check_symmetric(a);
  const std::size_t n = a.rows();
  if (n == 0) return {};
  if (n == 1) return {a(0, 0)};
  // A symmetric matrix reads the same in either storage order.
  std::vector<double> work(a.data(), a.data() + n * n);
  std::vector<double> d(n), e(n - 1), tau(n - 1);
  const lapack_int ln = static_cast<lapack_int>(n);
  const lapack_int info =
      LAPACKE_dsytrd(LAPACK_COL_MAJOR, 'L', ln, work.data(), ln, d.data(), e.data(), tau.data());
  if (info != 0) throw NumericError("dsytrd failed with info " + std::to_string(info));
  return tridiagonal_eigenvalues(std::move(d), std::move(e));
}

std::string to_string(Scaling s) { return s == Scaling::sqrt_n ? "sqrt_n" : "n"; }

Scaling parse_scaling(const std::string& name) {
  if (name == "sqrt_n" || name == "sqrt") return Scaling::sqrt_n;
  if (name == "n") return Scaling::n;
  throw InvalidArgument("unknown scaling '" + name + "' (expected sqrt_n or n)");
}

double EmpiricalSpectrum::moment(int r) const {
  if (eigenvalues.empty()) throw InvalidArgument("empty spectrum");
  return power_mean(eigenvalues, r);
}

EmpiricalSpectrum empirical_spectrum(const EnsembleSample& sample, Scaling scale) {
  EmpiricalSpectrum spec;
  spec.eigenvalues = eigvalsh(sample.matrix);
  const double f = scale_factor(scale, sample.n);
  for (double& x : spec.eigenvalues) x /= f;
  spec.scale = scale;
  spec.provenance = to_string(sample.ensemble) + " n=" + std::to_string(sample.n) + " " +
                    sample.dist.name() + " seed=" + std::to_string(sample.seed);
  return spec;
}

double empirical_moment(const Matrix& a, int r) {
  if (r < 1) throw InvalidArgument("moment order must be positive");
  const auto eig = eigvalsh(a);
  if (eig.empty()) throw InvalidArgument("empty matrix");
  const double n = static_cast<double>(eig.size());
  double acc = 0.0;
  for (double x : eig) acc += std::pow(x, r);
  return acc / std::pow(n, r / 2.0 + 1.0);
}

double spectral_norm(const Matrix& a) {
  const auto eig = eigvalsh(a);
  if (eig.empty()) return 0.0;
  return std::max(std::abs(eig.front()), std::abs(eig.back()));
}

Histogram histogram(const EmpiricalSpectrum& spec, std::size_t bins,
                    std::optional<std::pair<double, double>> range) {
  if (bins == 0) throw InvalidArgument("bins must be positive");
  if (spec.eigenvalues.empty()) throw InvalidArgument("empty spectrum");
  double lo, hi;
  if (range) {
    std::tie(lo, hi) = *range;
    if (!(lo < hi)) throw InvalidArgument("histogram range must satisfy lo < hi");
  } else {
    const auto [mn, mx] = std::minmax_element(spec.eigenvalues.begin(), spec.eigenvalues.end());
    lo = *mn;
    hi = *mx;
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  Histogram h;
  h.count.assign(bins, 0);
  for (std::size_t b = 0; b < bins; ++b) {
    h.left.push_back(lo + width * static_cast<double>(b));
    h.right.push_back(b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1));
  }
  std::uint64_t total = 0;
  for (double x : spec.eigenvalues) {
    if (x < lo || x > hi) continue;
    auto b = static_cast<std::size_t>((x - lo) / width);
    if (b >= bins) b = bins - 1;
    ++h.count[b];
    ++total;
  }
  h.density.assign(bins, 0.0);
  if (total > 0) {
    for (std::size_t b = 0; b < bins; ++b) {
      h.density[b] =
          static_cast<double>(h.count[b]) / (static_cast<double>(total) * (h.right[b] - h.left[b]));
    }
  }
  return h;
}

std::vector<double> smoothed_density(const Histogram& h) {
  constexpr double bandwidth = 2.0;
  const std::size_t bins = h.size();
  const auto reach = static_cast<std::ptrdiff_t>(std::ceil(4 * bandwidth));
  std::vector<double> out(bins, 0.0);
  for (std::size_t i = 0; i < bins; ++i) {
    double acc = 0.0, norm = 0.0;
    for (std::ptrdiff_t off = -reach; off <= reach; ++off) {
      const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + off;
      const double w = std::exp(-0.5 * (off / bandwidth) * (off / bandwidth));
      norm += w;
      if (j >= 0 && j < static_cast<std::ptrdiff_t>(bins)) acc += w * h.density[j];
    }
    out[i] = acc / norm;
  }
  return out;
}

std::size_t count_modes(const Histogram& h) {
  const auto s = smoothed_density(h);
  std::size_t modes = 0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] > s[i - 1] && s[i] > s[i + 1]) ++modes;
  }
  return modes;
}

void write_csv(std::ostream& os, const Histogram& h) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17) << "bin_left,bin_right,count,density\n";
  for (std::size_t b = 0; b < h.size(); ++b) {
    os << h.left[b] << ',' << h.right[b] << ',' << h.count[b] << ',' << h.density[b] << '\n';
  }
  os.flags(flags);
  os.precision(prec);
}

double kolmogorov_distance(const EmpiricalSpectrum& a, const EmpiricalSpectrum& b) {
  if (a.eigenvalues.empty() || b.eigenvalues.empty()) {
    throw InvalidArgument("kolmogorov_distance needs non-empty spectra");
  }
  std::vector<double> x = a.eigenvalues, y = b.eigenvalues;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < x.size() || j < y.size()) {
    double t;
    if (j == y.size() || (i < x.size() && x[i] <= y[j])) {
      t = x[i];
    } else {
      t = y[j];
    }
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return best;
}

std::vector<std::vector<Rational>> exact_matrix(Ensemble ensemble,
                                                const std::vector<Rational>& entries,
                                                std::size_t n) {
  if (n == 0) throw InvalidArgument("matrix size must be positive");
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n, Rational(0)));
  switch (ensemble) {
    case Ensemble::toeplitz:
      if (entries.size() != n) throw InvalidArgument("toeplitz needs n entries X_0..X_{n-1}");
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = entries[i > j ? i - j : j - i];
      }
      break;
    case Ensemble::hankel:
      if (entries.size() != 2 * n - 1) {
        throw InvalidArgument("hankel needs 2n-1 entries X_1..X_{2n-1}");
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = entries[i + j];
      }
      break;
    case Ensemble::markov: {
      const auto pairs = vertex_pairs(n);
      if (entries.size() != pairs.size()) {
        throw InvalidArgument("markov needs one entry per vertex pair");
      }
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const std::size_t i = pairs[p].lo - 1, j = pairs[p].hi - 1;
        a[i][j] = entries[p];
        a[j][i] = entries[p];
        a[i][i] -= entries[p];
        a[j][j] -= entries[p];
      }
      break;
    }
    default:
      throw InvalidArgument("exact matrices exist for toeplitz, hankel and markov only");
  }
  return a;
}

Rational trace_via_power(const std::vector<std::vector<Rational>>& a, int r) {
  if (r < 1) throw InvalidArgument("power must be positive");
  const std::size_t n = a.size();
  auto p = a;
  for (int step = 1; step < r; ++step) {
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (sgn(p[i][k]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] += p[i][k] * a[k][j];
      }
    }
    p = std::move(next);
  }
  Rational t(0);
  for (std::size_t i = 0; i < n; ++i) t += p[i][i];
  return t;
}

Rational trace_via_circuits(Ensemble ensemble, const std::vector<Rational>& entries,
                            std::size_t n, int r, std::uint64_t budget) {
  if (r < 1) throw InvalidArgument("circuit length must be positive");
  if (n == 0) throw InvalidArgument("matrix size must be positive");
  exact_matrix(ensemble, entries, n);  // validates the entry count

  const std::vector<VertexPair> pairs =
      ensemble == Ensemble::markov ? vertex_pairs(n) : std::vector<VertexPair>{};
  const std::size_t states = ensemble == Ensemble::markov ? pairs.size() : n;
  double circuits = std::pow(static_cast<double>(states), r);
  if (circuits > static_cast<double>(budget)) {
    throw CapacityError("circuit enumeration exceeds budget of " + std::to_string(budget));
  }
  if (states == 0) return Rational(0);

  // Weight of the step from state u to state v.
  auto step = [&](std::size_t u, std::size_t v) -> Rational {
    switch (ensemble) {
      case Ensemble::toeplitz: return entries[u > v ? u - v : v - u];
      case Ensemble::hankel: return entries[u + v];
      default: return Rational(pair_trace(pairs[u], pairs[v])) * entries[v];
    }
  };

  std::vector<std::size_t> path(static_cast<std::size_t>(r), 0);
  std::vector<Rational> prefix(static_cast<std::size_t>(r) + 1, Rational(1));
  Rational total(0);
  // path[0] is pi(0) = pi(r); prefix[i] is the product of the first i steps.
  std::function<void(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == static_cast<std::size_t>(r)) {
      total += prefix[depth - 1] * step(path[depth - 1], path[0]);
      return;
    }
    for (std::size_t s = 0; s < states; ++s) {
      path[depth] = s;
      if (depth > 0) {
        prefix[depth] = prefix[depth - 1] * step(path[depth - 1], s);
        if (sgn(prefix[depth]) == 0) continue;
      }
      extend(depth + 1);
    }
  };
  extend(0);
  return total;
}

std::pair<double, double> mean_and_std_error(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

SimulationResult simulate(const SimulationConfig& config) {
  if (config.n == 0) throw InvalidArgument("n must be positive");
  if (config.replicates == 0) throw InvalidArgument("replicates must be positive");
  if (config.max_moment < 1) throw InvalidArgument("max_moment must be positive");
  const double work = static_cast<double>(config.n) * static_cast<double>(config.n) *
                      static_cast<double>(config.replicates);
  if (config.n > 8192 || work > 0x1.0p32) {
    throw CapacityError("simulation budget exceeded (n <= 8192, n^2 * replicates <= 2^32)");
  }
  const std::size_t reps = config.replicates;
  std::vector<std::vector<double>> eig(reps);
  SimulationResult result;
  result.moments.assign(reps, std::vector<double>(static_cast<std::size_t>(config.max_moment)));
  result.norms.assign(reps, 0.0);
  parallel_for(reps, config.threads, [&](std::size_t i) {
    const auto sample = sample_matrix(config.ensemble, config.n, config.dist,
                                      derive_seed(config.seed, i));
    auto spec = empirical_spectrum(sample, config.scale);
    const double f = scale_factor(config.scale, config.n);
    result.norms[i] =
        f * std::max(std::abs(spec.eigenvalues.front()), std::abs(spec.eigenvalues.back()));
    for (int r = 1; r <= config.max_moment; ++r) result.moments[i][r - 1] = spec.moment(r);
    eig[i] = std::move(spec.eigenvalues);
  });
  for (auto& e : eig) {
    result.pooled.eigenvalues.insert(result.pooled.eigenvalues.end(), e.begin(), e.end());
  }
  std::sort(result.pooled.eigenvalues.begin(), result.pooled.eigenvalues.end());
  result.pooled.scale = config.scale;
  result.pooled.provenance = to_string(config.ensemble) + " n=" + std::to_string(config.n) +
                             " replicates=" + std::to_string(reps) + " " + config.dist.name() +
                             " seed=" + std::to_string(config.seed);
  for (int r = 1; r <= config.max_moment; ++r) {
    std::vector<double> xs(reps);
    for (std::size_t i = 0; i < reps; ++i) xs[i] = result.moments[i][r - 1];
    const auto [m, se] = mean_and_std_error(xs);
    result.summary.push_back({r, m, se});
  }
  return result;
}

std::vector<NormScanRow> norm_scan(const std::vector<std::size_t>& ns,
                                   const EntryDistribution& dist, std::size_t replicates,
                                   std::uint64_t seed, unsigned threads) {
  if (replicates == 0) throw InvalidArgument("replicates must be positive");
  for (std::size_t n : ns) {
    if (n == 0) throw InvalidArgument("n must be positive");
    if (n > 8192) throw CapacityError("norm-scan budget exceeded (n <= 8192)");
  }
  std::vector<NormScanRow> rows;
  for (std::size_t n : ns) {
    std::vector<double> norms(replicates);
    const std::uint64_t size_seed = derive_seed(seed, n);
    parallel_for(replicates, threads, [&](std::size_t i) {
      const auto sample = sample_matrix(Ensemble::markov, n, dist, derive_seed(size_seed, i));
      norms[i] = spectral_norm(sample.matrix);
    });
    NormScanRow row;
    row.n = n;
    row.replicates = replicates;
    std::tie(row.norm_mean, row.norm_std_error) = mean_and_std_error(norms);
    const double nd = static_cast<double>(n);
    std::vector<double> per_n(replicates);
    for (std::size_t i = 0; i < replicates; ++i) per_n[i] = norms[i] / nd;
    std::tie(row.per_n_mean, row.per_n_std_error) = mean_and_std_error(per_n);
    if (n > 1) {
      const double denom = std::sqrt(2.0 * nd * std::log(nd));
      std::vector<double> ratio(replicates);
      for (std::size_t i = 0; i < replicates; ++i) ratio[i] = norms[i] / denom;
      const auto [m, se] = mean_and_std_error(ratio);
      row.ratio_mean = m;
      row.ratio_std_error = se;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rmspec
