#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rmspec/ensembles.hpp"
#include "rmspec/matrix.hpp"
#include "rmspec/rational.hpp"
#include "rmspec/rng.hpp"

namespace rmspec {

/// Ascending eigenvalues of a symmetric matrix: Householder reduction to
/// tridiagonal form (LAPACK dsytrd), then implicit-shift QL.
/// Throws InvalidArgument if the matrix is not square, not finite, or
/// asymmetric beyond 1e-12 of its largest entry; NumericError if QL needs
/// more than 30 sweeps for one eigenvalue.
std::vector<double> eigvalsh(const Matrix& a);

/// Eigenvalues of the tridiagonal matrix with diagonal d and off-diagonal e
/// (e.size() == d.size() - 1, or both empty), ascending.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e);

enum class Scaling { sqrt_n, n };

std::string to_string(Scaling s);
Scaling parse_scaling(const std::string& name);

/// Eigenvalues of A / sqrt(n) or A / n, ascending.
struct EmpiricalSpectrum {
  std::vector<double> eigenvalues;
  Scaling scale = Scaling::sqrt_n;
  std::string provenance;

  /// (1/n) sum lambda^r over the stored (already scaled) eigenvalues.
  double moment(int r) const;
};

EmpiricalSpectrum empirical_spectrum(const EnsembleSample& sample, Scaling scale);

/// n^{-(r/2+1)} tr A^r, from the eigenvalues of A.
double empirical_moment(const Matrix& a, int r);

/// max(|lambda_min|, |lambda_max|).
double spectral_norm(const Matrix& a);

struct Histogram {
  std::vector<double> left;
  std::vector<double> right;
  std::vector<std::uint64_t> count;
  std::vector<double> density;

  std::size_t size() const noexcept { return count.size(); }
};

/// Equal-width bins over [min, max] of the spectrum, or over `range`.
/// The last bin is closed; values outside `range` are dropped. Densities
/// integrate to 1 over the counted values.
Histogram histogram(const EmpiricalSpectrum& spec, std::size_t bins,
                    std::optional<std::pair<double, double>> range = std::nullopt);

/// Density smoothed by a Gaussian kernel of width two bins.
std::vector<double> smoothed_density(const Histogram& h);

/// Strict interior local maxima of smoothed_density.
std::size_t count_modes(const Histogram& h);

/// Header bin_left,bin_right,count,density; 17 significant digits.
void write_csv(std::ostream& os, const Histogram& h);

/// sup |F_a - F_b| of the two empirical distribution functions.
double kolmogorov_distance(const EmpiricalSpectrum& a, const EmpiricalSpectrum& b);

inline constexpr std::uint64_t kDefaultCircuitBudget = std::uint64_t{1} << 20;

/// tr A^r as a sum over circuits, in exact arithmetic.
///
/// toeplitz: entries X_0..X_{n-1}, terms prod X_{|pi(i) - pi(i-1)|}
/// hankel:   entries X_1..X_{2n-1}, terms prod X_{pi(i) + pi(i-1) - 1}
/// markov:   entries X_a for a in vertex_pairs(n), terms
///           prod t_{a_j, a_{j+1}} prod X_{a_j} over closed walks a_1..a_r
///           of overlapping pairs
/// Throws CapacityError when the number of circuits exceeds `budget`.
Rational trace_via_circuits(Ensemble ensemble, const std::vector<Rational>& entries,
                            std::size_t n, int r,
                            std::uint64_t budget = kDefaultCircuitBudget);

/// The matrix built from the same entries (markov diagonal from row sums).
std::vector<std::vector<Rational>> exact_matrix(Ensemble ensemble,
                                                const std::vector<Rational>& entries,
                                                std::size_t n);

/// tr A^r by repeated exact multiplication.
Rational trace_via_power(const std::vector<std::vector<Rational>>& a, int r);

struct SimulationConfig {
  Ensemble ensemble = Ensemble::toeplitz;
  std::size_t n = 1024;
  std::size_t replicates = 20;
  EntryDistribution dist = EntryDistribution::gaussian();
  std::uint64_t seed = kDefaultSeed;
  Scaling scale = Scaling::sqrt_n;
  int max_moment = 8;
  unsigned threads = 1;
};

struct MomentSummary {
  int order = 0;
  double mean = 0.0;
  double std_error = 0.0;  // over replicates; 0 for a single replicate
};

struct SimulationResult {
  EmpiricalSpectrum pooled;                    // all replicates, sorted
  std::vector<std::vector<double>> moments;    // [replicate][r - 1], r = 1..max_moment
  std::vector<MomentSummary> summary;          // r = 1..max_moment
  std::vector<double> norms;                   // spectral norm of each unscaled matrix
};

/// Replicate i uses seed derive_seed(config.seed, i); results do not depend
/// on config.threads. Throws CapacityError when n > 8192 or
/// n^2 * replicates > 2^32.
SimulationResult simulate(const SimulationConfig& config);

struct NormScanRow {
  std::size_t n = 0;
  std::size_t replicates = 0;
  double norm_mean = 0.0;
  double norm_std_error = 0.0;
  std::optional<double> ratio_mean;       // ||M_n|| / sqrt(2 n log n); none at n = 1
  std::optional<double> ratio_std_error;
  double per_n_mean = 0.0;                // ||M_n|| / n
  double per_n_std_error = 0.0;
};

/// Markov spectral norms; size n uses master seed derive_seed(seed, n).
std::vector<NormScanRow> norm_scan(const std::vector<std::size_t>& ns,
                                   const EntryDistribution& dist, std::size_t replicates,
                                   std::uint64_t seed, unsigned threads = 1);

/// Mean and standard error of the mean (0 when fewer than two values).
std::pair<double, double> mean_and_std_error(const std::vector<double>& xs);

}  // namespace rmspec
