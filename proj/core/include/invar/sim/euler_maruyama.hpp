#pragma once

#include "invar/problem/domain.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace invar {

using DriftFn = std::function<Vec(double, const Vec&)>;
using DiffusionFn = std::function<Mat(double, const Vec&)>;

/// One Euler-Maruyama path:
///   x_{k+1} = x_k + drift(t_k, x_k) dt + diffusion(t_k, x_k) sqrt(dt) xi_k
/// with xi_k i.i.d. standard normal from the seeded stream. Returns all
/// n_steps + 1 states including x0. Deterministic per (seed, stream).
/// Throws (reporting the step index) if the state turns non-finite.
std::vector<Vec> euler_maruyama(const DriftFn& drift, const DiffusionFn& diffusion, const Vec& x0,
                                double dt, long n_steps, std::uint64_t seed,
                                std::uint64_t stream = 0);

}  // namespace invar
