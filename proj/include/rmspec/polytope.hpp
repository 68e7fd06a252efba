#pragma once

#include <cstddef>
#include <vector>

#include "rmspec/rational.hpp"

namespace rmspec {

/// Half-space a . y <= b.
struct HalfSpace {
  std::vector<Rational> normal;
  Rational bound;
};

/// Exact Lebesgue volume of the bounded polytope {y in R^dim : a_i . y <= b_i}.
///
/// Lasserre's facet recursion: d * vol(P) = sum_i (b_i / |a_i|) vol_{d-1}(F_i).
/// Each facet is measured in the coordinates left free by the reduced
/// row-echelon form of its tight rows, which makes the (d-1)-volumes rational
/// and lets faces reached along different paths share one memo entry.
/// Lower-dimensional and empty polytopes give 0. The caller guarantees
/// boundedness (the unit-cube rows are always present in this library).
Rational polytope_volume(const std::vector<HalfSpace>& rows, std::size_t dim);

}  // namespace rmspec
