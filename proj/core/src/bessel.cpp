#include "invar/pde/bessel.hpp"

#include "invar/pde/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace invar {

double bessel_j(int order, double argument) {
    if (order != 0 && order != 1) throw std::invalid_argument("bessel_j: order must be 0 or 1");
    if (!std::isfinite(argument)) throw std::invalid_argument("bessel_j: argument must be finite");
    // J_n(-x) = (-1)^n J_n(x); the library call wants x >= 0.
    const double x = std::abs(argument);
    const double v = std::cyl_bessel_j(static_cast<double>(order), x);
    return (order == 1 && argument < 0.0) ? -v : v;
}

std::vector<double> bessel_j0_zeros(int k_max) {
    if (k_max < 1) throw std::invalid_argument("bessel_j0_zeros: k_max >= 1");
    std::vector<double> zeros;
    zeros.reserve(k_max);
    for (int k = 1; k <= k_max; ++k) {
        // McMahon guess; consecutive J0 zeros are ~pi apart, so +-1 brackets.
        const double guess = (k - 0.25) * std::numbers::pi;
        double lo = k == 1 ? 1.0 : guess - 1.0;
        double hi = guess + 1.0;
        double flo = bessel_j(0, lo);
        double fhi = bessel_j(0, hi);
        if (flo * fhi > 0.0) throw std::runtime_error("bessel_j0_zeros: bracket failure");
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fmid = bessel_j(0, mid);
            if (std::abs(fmid) <= 1e-12 || hi - lo < 1e-14 * hi) {
                lo = hi = mid;
                break;
            }
            if (flo * fmid <= 0.0) {
                hi = mid;
                fhi = fmid;
            } else {
                lo = mid;
                flo = fmid;
            }
        }
        const double z = 0.5 * (lo + hi);
        if (std::abs(bessel_j(0, z)) > 1e-10)
            throw std::runtime_error("bessel_j0_zeros: refinement did not converge");
        if (!zeros.empty() && z <= zeros.back())
            throw std::runtime_error("bessel_j0_zeros: zeros not increasing");
        zeros.push_back(z);
    }
    return zeros;
}

std::vector<double> annulus_coefficients(double r1, double r2, int k_max) {
    if (!(0.0 < r1 && r1 < r2)) throw std::invalid_argument("annulus_coefficients: 0 < r1 < r2");
    if (k_max < 1) throw std::invalid_argument("annulus_coefficients: k_max >= 1");
    const auto zeros = bessel_j0_zeros(k_max);
    std::vector<double> coeffs;
    coeffs.reserve(k_max);
    constexpr double tol = 1e-10;
    for (int k = 0; k < k_max; ++k) {
        const double zk = zeros[k];
        auto mode = [&](double r) { return bessel_j(0, zk * r / r2) * r; };
        auto mode_sq = [&](double r) {
            const double j = bessel_j(0, zk * r / r2);
            return j * j * r;
        };
        const double numerator = adaptive_simpson(mode, r1, r2, tol);
        // Split at r1 so the integrand's kink location from the indicator
        // support never straddles a panel.
        const double denominator =
            adaptive_simpson(mode_sq, 0.0, r1, tol) + adaptive_simpson(mode_sq, r1, r2, tol);
        coeffs.push_back(numerator / denominator);
    }
    return coeffs;
}

}  // namespace invar
