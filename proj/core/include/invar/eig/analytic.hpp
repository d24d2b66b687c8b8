#pragma once

#include "invar/problem/domain.hpp"

#include <functional>

namespace invar {

/// Closed-form principal Dirichlet eigenpair of (-L) for a zero-drift unit
/// diffusion (L = Laplacian / 2), as an evaluable pair plus the log-gradient
/// used by the score construction.
struct AnalyticEigenpair {
    double lambda0 = 0.0;
    std::function<double(const Vec&)> psi0;
    std::function<Vec(const Vec&)> grad_log_psi0;
};

/// Rect(0, ell): lambda0 = (pi^2 / 2) sum_i 1/ell_i^2,
/// psi0(x) = prod_i sin(pi x_i / ell_i).
AnalyticEigenpair analytic_eigenpair_rect(const Vec& ell);

/// Disk of radius r1 about the origin: psi0(r) = J0(z1 r / r1) scaled by
/// 1 / (sqrt(pi) r1 |J0'(z1)|) for a unit L2 norm, z1 the first J0 zero.
/// lambda0 = (z1 / r1)^2 / 2, the value the discretized -L_h converges to
/// under grid refinement.
AnalyticEigenpair analytic_eigenpair_disk(double r1);

/// Weyl chamber x_1 < ... < x_n: the Vandermonde determinant is harmonic, so
/// it plays the role of psi0 with lambda0 = 0; the log-gradient is the
/// pairwise repulsion sum_{j != i} 1 / (x_i - x_j).
AnalyticEigenpair analytic_eigenpair_weyl(int n);

}  // namespace invar
