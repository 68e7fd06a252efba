#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "rmspec/rational.hpp"
#include "rmspec/rng.hpp"
#include "rmspec/volumes.hpp"
#include "rmspec/words.hpp"

namespace rmspec {

/// Limiting spectral laws handled here. The first three are the structured
/// ensembles; semicircle and gaussian are reference laws.
enum class Family { toeplitz, hankel, markov, semicircle, gaussian };

std::string to_string(Family f);
Family parse_family(const std::string& name);

enum class MomentMethod { exact, mc, formula };

std::string to_string(MomentMethod m);

struct MomentEntry {
  std::optional<Rational> exact;
  double value = 0.0;
  double std_error = 0.0;

  static MomentEntry from_exact(Rational q);
};

/// Moments of a symmetric law by order; odd orders are zero by construction
/// and only appear in the table when they were requested explicitly.
struct MomentTable {
  Family family = Family::toeplitz;
  MomentMethod method = MomentMethod::exact;
  std::map<int, MomentEntry> entries;

  /// Exact moment of the given order; throws InvalidArgument when absent or
  /// only estimated.
  const Rational& exact(int order) const;
};

/// Even free cumulants k_{2r}; odd ones vanish.
struct CumulantTable {
  Family family = Family::toeplitz;
  std::map<int, Rational> entries;
};

struct MomentOptions {
  MomentMethod method = MomentMethod::exact;
  std::uint64_t mc_samples = 200000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t word_cap = kDefaultWordCap;
  VolumeLimits volume_limits{};
};

/// Limiting moment of order `order` for toeplitz/hankel/markov.
///
/// markov: sum over words of 2^height (always exact).
/// toeplitz/hankel: sum of p_T(w) / p_H(w), exact or Monte Carlo; the MC
/// stream for word number i is derive_seed(seed, i) and the aggregate
/// standard error is the root sum of squares of the per-word errors.
MomentEntry limit_moment(Family family, int order, const MomentOptions& opts = {});

/// Orders 0..max_order of limit_moment.
MomentTable limit_moments(Family family, int max_order, const MomentOptions& opts = {});

/// Semicircle: Catalan numbers; gaussian: (2k-1)!!. Odd orders are 0.
Rational reference_moment(Family family, int order);

/// Even free cumulants of the standard semicircle (k_2 = 1, rest 0).
CumulantTable semicircle_cumulants(int up_to);
/// Even free cumulants of the standard normal: irreducible word counts.
CumulantTable gaussian_cumulants(int up_to, std::size_t word_cap = kDefaultWordCap);
/// Sum of the two tables above; the free convolution semicircle + normal.
CumulantTable markov_cumulants(int up_to, std::size_t word_cap = kDefaultWordCap);

/// m_{2n} = sum_{r=1}^{n} k_{2r} sum_{i_1+...+i_{2r}=2n-2r} prod m_{i_j},
/// with m_0 = 1 and odd m vanishing. Returns orders 0, 2, ..., up_to.
MomentTable cumulants_to_moments(const CumulantTable& c, int up_to);

/// Inverse of cumulants_to_moments, solved order by order.
CumulantTable moments_to_cumulants(const MomentTable& m, int up_to);

/// det [w_ij m_{2(i+j-2)}]_{1<=i,j<=n}, w_ij = 2(i+j)-3 when weighted else 1.
Rational hankel_moment_matrix_det(const MomentTable& m, int n, bool weighted);

/// Exact determinant by fraction-exact Gaussian elimination.
Rational determinant(std::vector<std::vector<Rational>> a);

}  // namespace rmspec
