#include "invar/pde/series.hpp"

#include "invar/pde/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace invar {

double h_rect_series(const Vec& ell, const Vec& b, double T, double t, const Vec& x, int M) {
    if (t > T) throw std::invalid_argument("h_rect_series: t > T");
    if (M < 1) throw std::invalid_argument("h_rect_series: M >= 1");
    if (ell.size() != b.size() || ell.size() != x.size())
        throw std::invalid_argument("h_rect_series: dimension mismatch");
    if (!((b.array() > 0).all() && (b.array() <= ell.array()).all()))
        throw std::invalid_argument("h_rect_series: need 0 < b <= ell");
    if (((x.array() < 0) || (x.array() > ell.array())).any())
        throw std::invalid_argument("h_rect_series: x outside closure of Rect(0, ell)");

    // The multi-index sum of products factorizes into a product of per-axis
    // sine series; evaluate each axis sum independently.
    const double dt = T - t;
    double h = 1.0;
    for (Eigen::Index i = 0; i < ell.size(); ++i) {
        double axis = 0.0;
        for (int m = 1; m <= M; ++m) {
            const double km = std::numbers::pi * m / ell[i];
            const double coeff = (2.0 / (std::numbers::pi * m)) * (1.0 - std::cos(km * b[i]));
            axis += coeff * std::sin(km * x[i]) * std::exp(-0.5 * dt * km * km);
        }
        h *= axis;
    }
    return std::clamp(h, 0.0, 1.0);
}

int rect_truncation_order(double ell_max, double dt_to_go) {
    constexpr int floor_order = 50;
    if (!(dt_to_go > 0.0)) return floor_order;
    // First omitted mode factor exp(-dt/2 (pi (M+1)/ell)^2) <= 1e-12.
    const double target = 12.0 * std::numbers::ln10;  // -log(1e-12)
    const double m = ell_max / std::numbers::pi * std::sqrt(2.0 * target / dt_to_go);
    return std::max(floor_order, static_cast<int>(std::ceil(m)));
}

AnnulusSeries::AnnulusSeries(double r1, double r2, int k_max) : r1_(r1), r2_(r2) {
    zeros_ = bessel_j0_zeros(k_max);
    coeffs_ = annulus_coefficients(r1, r2, k_max);
}

double AnnulusSeries::value(double T, double t, double r) const {
    if (t > T) throw std::invalid_argument("AnnulusSeries::value: t > T");
    if (r > r2_ || r < 0.0) throw std::invalid_argument("AnnulusSeries::value: r outside [0, r2]");
    const double dt = T - t;
    double h = 0.0;
    for (std::size_t k = 0; k < zeros_.size(); ++k) {
        const double rate = zeros_[k] / r2_;
        h += coeffs_[k] * bessel_j(0, zeros_[k] * r / r2_) * std::exp(-0.5 * dt * rate * rate);
    }
    return std::clamp(h, 0.0, 1.0);
}

int annulus_truncation_order(double r2, double dt_to_go) {
    constexpr int floor_order = 50;
    if (!(dt_to_go > 0.0)) return floor_order;
    const double target = 12.0 * std::numbers::ln10;
    // z_k ~ (k - 1/4) pi; require exp(-dt/2 (z_{K+1}/r2)^2) <= 1e-12.
    const double z = r2 * std::sqrt(2.0 * target / dt_to_go);
    const int k = static_cast<int>(std::ceil(z / std::numbers::pi + 0.25));
    return std::max(floor_order, k);
}

double vandermonde(const Vec& x) {
    if (x.size() < 2) throw std::invalid_argument("vandermonde: n >= 2 required");
    double det = 1.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        for (Eigen::Index j = i + 1; j < x.size(); ++j) det *= x[j] - x[i];
    return det;
}

}  // namespace invar
