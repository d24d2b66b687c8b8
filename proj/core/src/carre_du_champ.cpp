#include "invar/pde/carre_du_champ.hpp"

#include <stdexcept>

namespace invar {

namespace {

/// L[P](x) = <A x + b, grad P(x)> + 1/2 sum_ij Sigma_ij d_i d_j P(x),
/// with every derivative taken on the polynomial itself.
double apply_generator_poly(const Polynomial& P, const Mat& Sigma, const Mat& A, const Vec& b,
                            const Vec& x) {
    const int n = P.n_vars();
    const Vec f = A * x + b;
    double out = 0.0;
    for (int i = 0; i < n; ++i) {
        const Polynomial di = P.derivative(i);
        out += f[i] * di.eval(x);
        for (int j = 0; j < n; ++j) {
            if (Sigma(i, j) == 0.0) continue;
            out += 0.5 * Sigma(i, j) * di.derivative(j).eval(x);
        }
    }
    return out;
}

}  // namespace

CarreDuChampPair carre_du_champ_check(const Mat& Sigma, const Mat& A, const Vec& b,
                                      const Quadratic& phi, const Quadratic& psi, const Vec& x) {
    const int n = static_cast<int>(x.size());
    if (Sigma.rows() != n || Sigma.cols() != n || A.rows() != n || A.cols() != n || b.size() != n ||
        phi.g.size() != n || psi.g.size() != n)
        throw std::invalid_argument("carre_du_champ_check: dimension mismatch");

    const Polynomial p_phi = phi.to_polynomial();
    const Polynomial p_psi = psi.to_polynomial();
    const Polynomial product = p_phi * p_psi;

    const double l_product = apply_generator_poly(product, Sigma, A, b, x);
    const double l_phi = apply_generator_poly(p_phi, Sigma, A, b, x);
    const double l_psi = apply_generator_poly(p_psi, Sigma, A, b, x);

    CarreDuChampPair out;
    out.lhs = 0.5 * (l_product - phi.value(x) * l_psi - psi.value(x) * l_phi);
    out.rhs = 0.5 * phi.grad(x).dot(Sigma * psi.grad(x));
    return out;
}

}  // namespace invar
