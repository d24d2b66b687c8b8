#pragma once

#include "invar/problem/domain.hpp"

#include <map>
#include <vector>

namespace invar {

/// Sparse multivariate polynomial with exact coefficient arithmetic over
/// doubles. Small-degree use only (products of quadratics).
class Polynomial {
public:
    explicit Polynomial(int n_vars) : n_(n_vars) {}

    int n_vars() const { return n_; }
    void add_term(std::vector<int> exponents, double coeff);

    Polynomial operator*(const Polynomial& other) const;
    Polynomial derivative(int var) const;
    double eval(const Vec& x) const;

private:
    int n_;
    std::map<std::vector<int>, double> terms_;
};

/// Quadratic phi(x) = c + g.x + x' H x / 2 with closed-form calculus.
struct Quadratic {
    double c = 0.0;
    Vec g;
    Mat H;  // symmetric

    double value(const Vec& x) const { return c + g.dot(x) + 0.5 * x.dot(H * x); }
    Vec grad(const Vec& x) const { return g + H * x; }
    Polynomial to_polynomial() const;
};

}  // namespace invar
