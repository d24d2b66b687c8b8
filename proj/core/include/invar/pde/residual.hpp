#pragma once

#include "invar/pde/field.hpp"
#include "invar/pde/generator.hpp"

namespace invar {

/// Max |dh/dt + L[h]| over interior space-time nodes: time derivative by
/// central differences on the time grid, spatial part via the discretized
/// generator. Slices whose central-difference stencil reaches closer than
/// `terminal_margin` (time units) to the horizon are excluded: the terminal
/// indicator slice is non-smooth and its error does not vanish under
/// refinement, so a fixed physical margin keeps refinement studies
/// meaningful. `min_depth` restricts the sweep to nodes at least that many
/// cells from the non-interior set, for grids whose inner cutoff is not a
/// true absorbing boundary. Requires at least 3 time slices.
double pde_residual(const SpaceTimeField& field, const Grid& grid, const DynamicsField& dynamics,
                    double terminal_margin = 0.0, int min_depth = 1);

}  // namespace invar
