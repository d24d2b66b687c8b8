#pragma once

#include "invar/certify/score.hpp"

namespace invar {

/// Max absolute residual of the value-function equation for V = log max(h, eps):
///   dV/dt + 1/2 (grad V)' Sigma grad V + <grad V, f> + 1/2 <Sigma, Hess V>
/// (running state cost is zero on the interior), all derivatives by central
/// differences. Requires G G' = Sigma at sampled nodes; throws otherwise.
///
/// V is log-singular at the absorbing boundary and non-smooth at the terminal
/// slice, so the sweep keeps a physical distance from both: nodes at least 3
/// cells AND `boundary_margin` away from the boundary, slices whose stencil
/// stays `terminal_margin` before the horizon. Fixed physical margins make
/// the residual comparable across resolutions.
double hjb_residual(const SpaceTimeField& field, const Grid& grid, const DynamicsField& dynamics,
                    double eps_rel = kScoreFloorRel, double terminal_margin = 0.0,
                    double boundary_margin = 0.0);

}  // namespace invar
