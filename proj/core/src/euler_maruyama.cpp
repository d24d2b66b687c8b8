#include "invar/sim/euler_maruyama.hpp"

#include "invar/support/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace invar {

std::vector<Vec> euler_maruyama(const DriftFn& drift, const DiffusionFn& diffusion, const Vec& x0,
                                double dt, long n_steps, std::uint64_t seed,
                                std::uint64_t stream) {
    if (!(dt > 0.0)) throw std::invalid_argument("euler_maruyama: dt > 0 required");
    PhiloxRng rng(seed, stream);
    std::vector<Vec> path;
    path.reserve(n_steps + 1);
    path.push_back(x0);

    Vec x = x0;
    const double sqrt_dt = std::sqrt(dt);
    for (long k = 0; k < n_steps; ++k) {
        const double t = k * dt;
        const Vec f = drift(t, x);
        const Mat sigma = diffusion(t, x);
        Vec noise(sigma.cols());
        for (Eigen::Index i = 0; i < noise.size(); ++i) noise[i] = rng.next_normal();
        x += f * dt + sqrt_dt * (sigma * noise);
        if (!x.allFinite())
            throw std::runtime_error("euler_maruyama: non-finite state at step " +
                                     std::to_string(k + 1));
        path.push_back(x);
    }
    return path;
}

}  // namespace invar
