#pragma once

#include "invar/problem/domain.hpp"

#include <functional>
#include <string>

namespace invar {

/// Coefficient fields of the controlled diffusion
///   dx = (f(t,x) + G(t,x) u) dt + sigma(t,x) dw.
///
/// Evaluations must be deterministic and finite on the domain of interest.
/// Built-in registry tags keep CLI runs bit-reproducible; the fields
/// themselves accept arbitrary callables for library use.
struct DynamicsField {
    int state_dim = 0;
    int input_dim = 0;
    int noise_dim = 0;
    std::function<Vec(double, const Vec&)> drift;         // f: n
    std::function<Mat(double, const Vec&)> input_matrix;  // G: n x m
    std::function<Mat(double, const Vec&)> diffusion;     // sigma: n x p
    std::string tag;  // registry tag, empty for custom fields
};

/// Diffusion tensor sigma sigma^T, symmetrized to the last bit.
/// Throws on non-finite entries or dimension mismatch.
Mat sigma_to_Sigma(const DynamicsField& dynamics, double t, const Vec& x);

// Built-in dynamics. Parameters are fixed at construction so identical tags
// and parameters evaluate identically.

/// Standard Brownian prior: f = 0, G = sigma = I_n.
DynamicsField make_brownian(int n);

/// Planar Brownian prior with a single input column g (G is 2x1, sigma = I_2).
DynamicsField make_single_input_brownian(Vec g);

/// Planar drift f = (a - x2, 0) with G = sigma = I_2.
DynamicsField make_linear_drift(double a);

/// Cubic spring-damper with force input sharing the noise channel:
/// f = (x2, -alpha x1^3 - beta x2), G = sigma = (0, 1)^T.
DynamicsField make_spring_damper(double alpha, double beta);

}  // namespace invar
