#pragma once

#include <vector>

namespace invar {

/// J0 or J1, absolute accuracy better than 1e-10 for arguments up to 50 and
/// well beyond (backed by the standard library's cylindrical Bessel
/// implementation, cross-checked in the test suite).
double bessel_j(int order, double argument);

/// First k_max positive zeros of J0, strictly increasing, each refined by
/// bracketed bisection from the asymptotic guess (k - 1/4) pi until
/// |J0(z)| <= 1e-10.
std::vector<double> bessel_j0_zeros(int k_max);

/// Radial expansion coefficients of the annulus indicator in the J0 Dirichlet
/// modes of the disk of radius r2:
///   c_k = int_{r1}^{r2} J0(z_k r / r2) r dr / int_0^{r2} J0(z_k r / r2)^2 r dr,
/// both integrals by adaptive quadrature at 1e-10 absolute tolerance, the
/// numerator split at r1.
std::vector<double> annulus_coefficients(double r1, double r2, int k_max);

}  // namespace invar
