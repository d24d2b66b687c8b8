#include "invar/problem/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace invar {

Mat sigma_to_Sigma(const DynamicsField& dynamics, double t, const Vec& x) {
    if (x.size() != dynamics.state_dim)
        throw std::invalid_argument("sigma_to_Sigma: state dimension mismatch");
    const Mat sigma = dynamics.diffusion(t, x);
    if (!sigma.allFinite())
        throw std::runtime_error("sigma_to_Sigma: non-finite diffusion evaluation");
    Mat S = sigma * sigma.transpose();
    S = 0.5 * (S + S.transpose()).eval();
    return S;
}

DynamicsField make_brownian(int n) {
    if (n < 1) throw std::invalid_argument("make_brownian: n >= 1 required");
    DynamicsField d;
    d.state_dim = d.input_dim = d.noise_dim = n;
    d.tag = "brownian";
    d.drift = [n](double, const Vec&) { return Vec::Zero(n).eval(); };
    d.input_matrix = [n](double, const Vec&) { return Mat::Identity(n, n).eval(); };
    d.diffusion = [n](double, const Vec&) { return Mat::Identity(n, n).eval(); };
    return d;
}

DynamicsField make_single_input_brownian(Vec g) {
    if (g.size() != 2) throw std::invalid_argument("make_single_input_brownian: g must be a 2-vector");
    DynamicsField d;
    d.state_dim = 2;
    d.input_dim = 1;
    d.noise_dim = 2;
    d.tag = "single_input_brownian";
    d.drift = [](double, const Vec&) { return Vec::Zero(2).eval(); };
    d.input_matrix = [g](double, const Vec&) { return Mat(g); };
    d.diffusion = [](double, const Vec&) { return Mat::Identity(2, 2).eval(); };
    return d;
}

DynamicsField make_linear_drift(double a) {
    DynamicsField d;
    d.state_dim = d.input_dim = d.noise_dim = 2;
    d.tag = "linear_drift";
    d.drift = [a](double, const Vec& x) {
        Vec f(2);
        f << a - x[1], 0.0;
        return f;
    };
    d.input_matrix = [](double, const Vec&) { return Mat::Identity(2, 2).eval(); };
    d.diffusion = [](double, const Vec&) { return Mat::Identity(2, 2).eval(); };
    return d;
}

DynamicsField make_spring_damper(double alpha, double beta) {
    DynamicsField d;
    d.state_dim = 2;
    d.input_dim = 1;
    d.noise_dim = 1;
    d.tag = "spring_damper";
    d.drift = [alpha, beta](double, const Vec& x) {
        Vec f(2);
        f << x[1], -alpha * x[0] * x[0] * x[0] - beta * x[1];
        return f;
    };
    Mat col(2, 1);
    col << 0.0, 1.0;
    d.input_matrix = [col](double, const Vec&) { return col; };
    d.diffusion = [col](double, const Vec&) { return col; };
    return d;
}

}  // namespace invar
