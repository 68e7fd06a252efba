#pragma once

#include "rmspec/rational.hpp"
#include "rmspec/volumes.hpp"

namespace rmspec {

/// A(n, m): permutations of {1..n} with m ascents (counting sigma_0 = 0).
/// Zero outside 1 <= m <= n.
Integer eulerian_number(long n, long m);

/// The one-slab system {x in [0,1]^n : x_1 + ... + x_m - (x_{m+1} + ... + x_n)
/// in [0,1]} with n - m negative signs; its volume is A(n, m) / n!.
SlabSystem single_slab_system(long n, long m);

/// (2/pi) * integral_0^inf (sin t / t)^{n+1} cos((n+1-2m) t) dt.
///
/// Integrates whole periods of the oscillatory factor with Gauss-Kronrod and
/// closes the tail with the period-mean correction mean * T^{-n} / n, whose
/// error is O(T^{-n-1}). Throws NumericError if doubling the truncation
/// point moves the result by more than `tolerance`.
double slab_volume_integral(long n, long m, double tolerance = 1e-9);

}  // namespace rmspec
