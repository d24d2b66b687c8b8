#include "invar/eig/analytic.hpp"

#include "invar/certify/dyson.hpp"
#include "invar/pde/bessel.hpp"
#include "invar/pde/series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace invar {

AnalyticEigenpair analytic_eigenpair_rect(const Vec& ell) {
    if (!(ell.array() > 0).all())
        throw std::invalid_argument("analytic_eigenpair_rect: ell > 0 required");
    AnalyticEigenpair pair;
    pair.lambda0 = 0.5 * std::numbers::pi * std::numbers::pi * ell.array().square().inverse().sum();
    pair.psi0 = [ell](const Vec& x) {
        double v = 1.0;
        for (Eigen::Index i = 0; i < ell.size(); ++i)
            v *= std::sin(std::numbers::pi * x[i] / ell[i]);
        return v;
    };
    pair.grad_log_psi0 = [ell](const Vec& x) {
        Vec g(ell.size());
        for (Eigen::Index i = 0; i < ell.size(); ++i) {
            const double k = std::numbers::pi / ell[i];
            g[i] = k / std::tan(k * x[i]);
        }
        return g;
    };
    return pair;
}

AnalyticEigenpair analytic_eigenpair_disk(double r1) {
    if (!(r1 > 0.0)) throw std::invalid_argument("analytic_eigenpair_disk: r1 > 0 required");
    const double z1 = bessel_j0_zeros(1).front();
    // |J0'(z1)| = J1(z1).
    const double norm = 1.0 / (std::sqrt(std::numbers::pi) * r1 * bessel_j(1, z1));
    AnalyticEigenpair pair;
    pair.lambda0 = 0.5 * (z1 / r1) * (z1 / r1);
    pair.psi0 = [r1, z1, norm](const Vec& x) {
        return norm * bessel_j(0, z1 * x.norm() / r1);
    };
    pair.grad_log_psi0 = [r1, z1](const Vec& x) {
        const double r = x.norm();
        if (r == 0.0) return Vec::Zero(2).eval();
        // d/dr log J0(z1 r / r1) = -(z1 / r1) J1 / J0, pointing radially.
        const double arg = z1 * r / r1;
        const double radial = -(z1 / r1) * bessel_j(1, arg) / bessel_j(0, arg);
        return (radial / r * x).eval();
    };
    return pair;
}

AnalyticEigenpair analytic_eigenpair_weyl(int n) {
    if (n < 2) throw std::invalid_argument("analytic_eigenpair_weyl: n >= 2 required");
    AnalyticEigenpair pair;
    pair.lambda0 = 0.0;
    pair.psi0 = [](const Vec& x) { return vandermonde(x); };
    pair.grad_log_psi0 = [](const Vec& x) { return dyson_drift(x); };
    return pair;
}

}  // namespace invar
