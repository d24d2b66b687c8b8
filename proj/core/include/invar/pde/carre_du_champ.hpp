#pragma once

#include "invar/pde/polynomial.hpp"

namespace invar {

struct CarreDuChampPair {
    double lhs;  // (L[phi psi] - phi L[psi] - psi L[phi]) / 2, exact polynomial calculus
    double rhs;  // <Sigma grad phi, grad psi> / 2
};

/// Both sides of the bilinear-form identity for the generator with constant
/// Sigma and linear drift f(x) = A x + b, evaluated at a query point. The
/// left side goes through the expanded quartic product polynomial, so the
/// two routes are independent; equality is exact and drift-independent.
CarreDuChampPair carre_du_champ_check(const Mat& Sigma, const Mat& A, const Vec& b,
                                      const Quadratic& phi, const Quadratic& psi, const Vec& x);

}  // namespace invar
