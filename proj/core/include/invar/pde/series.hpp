#pragma once

#include "invar/problem/domain.hpp"

#include <vector>

namespace invar {

/// Survival/target-hit probability for zero-drift unit diffusion on
/// Rect(0, ell) with target Rect(0, b), by the separated sine series with
/// per-mode coefficient prod_i (2 / (pi m_i)) (1 - cos(pi m_i b_i / ell_i))
/// and mode decay exp(-(T - t)/2 * sum_i (pi m_i / ell_i)^2), truncated at M
/// modes per axis. Result clamped to [0, 1].
double h_rect_series(const Vec& ell, const Vec& b, double T, double t, const Vec& x, int M);

/// Truncation order such that the first omitted mode's time factor is below
/// 1e-12 at time-to-go `dt_to_go`, floored at 50 (near t = T decay cannot
/// help and the series is Gibbs-afflicted regardless).
int rect_truncation_order(double ell_max, double dt_to_go);

/// Precomputed radial series for the disk of radius r2 with annular target
/// (r1, r2): J0 Dirichlet modes, zeros and indicator coefficients cached.
class AnnulusSeries {
public:
    AnnulusSeries(double r1, double r2, int k_max);

    double r1() const { return r1_; }
    double r2() const { return r2_; }
    int modes() const { return static_cast<int>(zeros_.size()); }
    const std::vector<double>& zeros() const { return zeros_; }
    const std::vector<double>& coefficients() const { return coeffs_; }

    /// h_T(t, r) = sum_k c_k J0(z_k r / r2) exp(-(T-t)/2 (z_k / r2)^2),
    /// clamped to [0, 1]; independent of angle by construction.
    double value(double T, double t, double r) const;

private:
    double r1_, r2_;
    std::vector<double> zeros_, coeffs_;
};

int annulus_truncation_order(double r2, double dt_to_go);

/// Vandermonde determinant det[x_i^{j-1}] = prod_{i<j} (x_j - x_i);
/// positive on the ordered chamber x_1 < ... < x_n. Requires n >= 2.
double vandermonde(const Vec& x);

}  // namespace invar
