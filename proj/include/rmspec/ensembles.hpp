#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rmspec/matrix.hpp"
#include "rmspec/rational.hpp"

namespace rmspec {

enum class Ensemble { hankel, toeplitz, markov, wigner, wigner_plus_diag };

std::string to_string(Ensemble e);
Ensemble parse_ensemble(const std::string& name);

/// Law of the i.i.d. entries. Every draw is rounded to the grid 2^-32 Z so
/// that sums of up to 2^16 entries are exact in double precision.
struct EntryDistribution {
  enum class Tag { rademacher, gaussian, triangular, shifted_gaussian };

  Tag tag = Tag::gaussian;
  double shift = 0.0;  // shifted_gaussian only

  static EntryDistribution rademacher() { return {Tag::rademacher, 0.0}; }
  static EntryDistribution gaussian() { return {Tag::gaussian, 0.0}; }
  /// (U - U') * sqrt(6) for independent uniforms U, U'.
  static EntryDistribution triangular() { return {Tag::triangular, 0.0}; }
  static EntryDistribution shifted_gaussian(double mean) {
    return {Tag::shifted_gaussian, mean};
  }

  Rational mean() const;
  Rational variance() const;
  std::string name() const;

  friend bool operator==(const EntryDistribution&, const EntryDistribution&) = default;
};

/// "rademacher", "gaussian", "triangular" or "shifted_gaussian" (with `mean`).
EntryDistribution parse_distribution(const std::string& name, double mean = 0.0);

/// Entry number `index` of stream `stream`. A pure function of its
/// arguments, so draws can be taken in any order.
double draw_entry(const EntryDistribution& dist, std::uint64_t seed,
                  std::uint64_t stream, std::uint64_t index);

struct EnsembleSample {
  Ensemble ensemble = Ensemble::hankel;
  std::size_t n = 0;
  EntryDistribution dist;
  std::uint64_t seed = 0;
  Matrix matrix;
};

/// Stream layout (stream 0 unless noted):
///   hankel    X_1..X_{2n-1} at indices 0..2n-2, H[i][j] = X_{i+j+1} (0-based i, j)
///   toeplitz  X_0..X_{n-1}, T[i][j] = X_{|i-j|}
///   markov    upper triangle row-major; diagonal = -(off-diagonal row sum)
///   wigner    upper triangle row-major; zero diagonal
///   wigner_plus_diag
///             wigner part, plus sqrt(n) Z_i on the diagonal (stream 1, standard
///             normal) and xi I (stream 2, one standard normal)
/// Throws InvalidArgument for n = 0.
EnsembleSample sample_matrix(Ensemble ensemble, std::size_t n,
                             const EntryDistribution& dist, std::uint64_t seed);

/// Nonsymmetric Toeplitz R = [X_{i-j}] built from the stream of a Hankel
/// sample, relabelled X_{k-n} -> X_k, so that R R^T = H^2.
Matrix nonsymmetric_toeplitz(const EnsembleSample& hankel);

/// Vertex of the overlap graph: a two-element subset {lo < hi} of {1..n}.
struct VertexPair {
  std::size_t lo = 1;
  std::size_t hi = 2;

  friend bool operator==(const VertexPair&, const VertexPair&) = default;
  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

/// All two-element subsets of {1..n} in lexicographic order.
std::vector<VertexPair> vertex_pairs(std::size_t n);

/// tr Q_{a,b}: -2 if a = b; -1 if they share only their lower or only their
/// upper element; 1 if a's lower is b's upper or vice versa; else 0.
int pair_trace(const VertexPair& a, const VertexPair& b);

struct PairMatrix {
  Matrix q;
  int trace = 0;
};

/// Q_{a,b}: -1 at (a+, b+) and (a-, b-), +1 at (a+, b-) and (a-, b+).
/// Throws InvalidArgument unless 1 <= lo < hi <= n for both pairs.
PairMatrix markov_q(const VertexPair& a, const VertexPair& b, std::size_t n);

/// (1/n^2) sum_i (sum_{j != i} X_ij)^2 for a markov or wigner sample.
double row_sum_statistic(const EnsembleSample& sample);

}  // namespace rmspec
