#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rmspec/rational.hpp"
#include "rmspec/words.hpp"

namespace rmspec {

/// `general` marks hand-built systems (e.g. a single Eulerian slab).
enum class SlabKind { toeplitz, hankel, general };

std::string to_string(SlabKind kind);

/// c + sum_v coeff[v] * x_v over the path variables x_0, ..., x_{2k}.
struct AffineForm {
  Rational constant;
  std::vector<Rational> coeffs;

  static AffineForm variable(std::size_t v, std::size_t num_vars);

  bool is_zero() const;
  bool is_constant() const;

  AffineForm& operator+=(const AffineForm& o);
  AffineForm& operator-=(const AffineForm& o);
  friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
  friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
  friend bool operator==(const AffineForm&, const AffineForm&) = default;

  /// e.g. "x0 - x1 + x2".
  std::string to_string() const;
};

/// The linear system attached to a partition word, solved for its
/// dependent path variables.
///
/// Toeplitz: one equation x_i - x_{i-1} + x_m - x_{m-1} = 0 per letter
/// (occurring at 1-based positions i < m), solved for x_m in increasing m.
/// Hankel: x_i + x_{i-1} = x_m + x_{m-1}, solved for x_{i-1} in decreasing i,
/// plus the closure form x_0 - x_{2k} that must vanish.
class SlabSystem {
public:
  SlabKind kind() const noexcept { return kind_; }
  /// Half-length k of the word; 0 for general systems.
  std::size_t half_length() const noexcept { return k_; }
  std::size_t num_vars() const noexcept { return exprs_.size(); }

  /// Ascending indices of the free variables (k+1 of them for word systems).
  const std::vector<std::size_t>& free_vars() const noexcept { return free_; }

  /// Dependent variable indices with their forms over the free variables,
  /// in the order they were solved.
  const std::vector<std::pair<std::size_t, AffineForm>>& dependents() const noexcept {
    return dependents_;
  }

  const std::optional<AffineForm>& closure() const noexcept { return closure_; }

  /// Form of any variable; free variables map to themselves.
  const AffineForm& expression(std::size_t v) const { return exprs_.at(v); }

  /// True when a closure form is present and not identically zero, so the
  /// solid has dimension below k+1 and zero volume.
  bool closure_drops_dimension() const;

  /// Dependent forms rewritten as coefficient rows over free_vars() (in that
  /// order), with duplicates removed. Used by the volume routines.
  std::vector<std::pair<Rational, std::vector<Rational>>> distinct_constraints() const;

  /// A general system: `num_free` free variables x_0..x_{num_free-1} and one
  /// dependent variable per form (forms are over the free variables only).
  static SlabSystem general(std::size_t num_free, const std::vector<AffineForm>& forms);

private:
  friend SlabSystem build_system(const PartitionWord&, SlabKind);

  SlabKind kind_ = SlabKind::toeplitz;
  std::size_t k_ = 0;
  std::vector<std::size_t> free_;
  std::vector<std::pair<std::size_t, AffineForm>> dependents_;
  std::vector<AffineForm> exprs_;
  std::optional<AffineForm> closure_;
};

SlabSystem build_system(const PartitionWord& w, SlabKind kind);

enum class VolumeMethod { exact, mc, grid };

std::string to_string(VolumeMethod m);

struct VolumeEstimate {
  VolumeMethod method = VolumeMethod::exact;
  std::optional<Rational> exact;  // set for exact results and short-circuits
  double value = 0.0;
  double std_error = 0.0;         // Monte Carlo only
  std::uint64_t samples = 0;      // mc draws or grid points
};

struct VolumeLimits {
  std::size_t max_exact_dim = 6;
  std::uint64_t max_grid_points = std::uint64_t{1} << 28;
};

/// Exact volume of {free point in [0,1]^{k+1} : all dependent forms in
/// [0,1], closure = 0}. Throws CapacityError above limits.max_exact_dim.
VolumeEstimate volume_exact(const SlabSystem& s, const VolumeLimits& limits = {});

/// Fraction of uniform draws satisfying every dependent constraint.
VolumeEstimate volume_mc(const SlabSystem& s, std::uint64_t samples,
                         std::uint64_t seed);

/// Midpoint-rule count on a uniform grid with `subdivisions` cells per axis.
VolumeEstimate volume_grid(const SlabSystem& s, std::uint64_t subdivisions,
                           const VolumeLimits& limits = {});

}  // namespace rmspec
