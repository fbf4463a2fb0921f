#pragma once

#include "hartree/grid.hpp"
#include "hartree/riesz.hpp"

namespace hartree {

// Discrete Schwarz symmetrization about the grid center: the cell values are
// sorted in decreasing order and dealt out to the cells in order of increasing
// distance from the center (ties broken by flat index). The output is a
// permutation of the input. Throws std::invalid_argument on negative input.
Field schwarz(const Field &f);

// Closed half-space bounded by the coordinate hyperplane x_axis = 0 through
// the grid center. orientation = +1 keeps {x_axis >= 0}, -1 keeps {x_axis <= 0}.
// The reflection k -> (M - k) mod M maps nodes to nodes; the slab k = 0
// (x_axis = -L) and the plane k = M/2 are fixed.
struct HalfSpace {
  int axis = 0;
  int orientation = 1;
};

// Polarization: max(f, f o sigma) on H, min(f, f o sigma) off H.
Field polarize(const Field &f, const HalfSpace &H);

// Index of the mirror image of a node under the reflection of H.
std::size_t reflect_index(const GridSpec &spec, std::size_t flat, int axis);

struct RearrangementCheck {
  double lhs; // int (I_a * f) g
  double rhs; // int (I_a * f*) g*
};

// Riesz rearrangement inequality lhs <= rhs. f, g >= 0 on the plan's grid.
RearrangementCheck riesz_rearrangement_check(const Field &f, const Field &g,
                                             const RieszPlan &plan);

} // namespace hartree
