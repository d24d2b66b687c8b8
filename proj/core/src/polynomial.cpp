#include "invar/pde/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace invar {

void Polynomial::add_term(std::vector<int> exponents, double coeff) {
    if (static_cast<int>(exponents.size()) != n_)
        throw std::invalid_argument("Polynomial: exponent arity mismatch");
    if (coeff == 0.0) return;
    terms_[std::move(exponents)] += coeff;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    if (other.n_ != n_) throw std::invalid_argument("Polynomial: arity mismatch");
    Polynomial out(n_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : other.terms_) {
            std::vector<int> e(n_);
            for (int i = 0; i < n_; ++i) e[i] = ea[i] + eb[i];
            out.terms_[e] += ca * cb;
        }
    }
    return out;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial out(n_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        std::vector<int> d = e;
        d[var] -= 1;
        out.terms_[d] += c * e[var];
    }
    return out;
}

double Polynomial::eval(const Vec& x) const {
    if (x.size() != n_) throw std::invalid_argument("Polynomial: eval arity mismatch");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = c;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < e[i]; ++k) term *= x[i];
        sum += term;
    }
    return sum;
}

Polynomial Quadratic::to_polynomial() const {
    const int n = static_cast<int>(g.size());
    Polynomial p(n);
    p.add_term(std::vector<int>(n, 0), c);
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        p.add_term(e, g[i]);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<int> e(n, 0);
            e[i] += 1;
            e[j] += 1;
            p.add_term(e, 0.5 * H(i, j));
        }
    }
    return p;
}

}  // namespace invar
