#include "invar/pde/feynman_kac.hpp"

#include "invar/support/parallel.hpp"
#include "invar/support/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace invar {

FkEstimate feynman_kac_point(const ProblemSpec& spec, double t, const Vec& x, int n_paths,
                             double dt, std::uint64_t seed, std::uint32_t stream_node) {
    if (!spec.horizon.is_finite()) throw std::invalid_argument("feynman_kac_point: finite horizon only");
    const double T = spec.horizon.T();
    if (!(t < T)) throw std::invalid_argument("feynman_kac_point: t < T required");
    if (n_paths < 1 || !(dt > 0.0)) throw std::invalid_argument("feynman_kac_point: bad MC parameters");

    const Region start = spec.domain.classify(x);
    if (start == Region::Exterior)
        throw std::invalid_argument("feynman_kac_point: x outside the invariance set");
    if (start == Region::Boundary) return {0.0, 0.0};  // absorbed immediately

    const int p = spec.dynamics.noise_dim;
    const auto n_steps = static_cast<long>(std::ceil((T - t) / dt - 1e-12));

    long survivors = 0;
    for (int path = 0; path < n_paths; ++path) {
        PhiloxRng rng(seed, PhiloxRng::stream_id(stream_node, static_cast<std::uint32_t>(path)));
        Vec state = x;
        Vec noise(p);
        bool alive = true;
        double tk = t;
        for (long k = 0; k < n_steps; ++k) {
            const double step = std::min(dt, T - tk);
            const Vec f = spec.dynamics.drift(tk, state);
            const Mat sigma = spec.dynamics.diffusion(tk, state);
            if (!f.allFinite() || !sigma.allFinite())
                throw std::runtime_error("feynman_kac_point: non-finite drift/diffusion");
            for (int i = 0; i < p; ++i) noise[i] = rng.next_normal();
            state += f * step + std::sqrt(step) * (sigma * noise);
            tk += step;
            if (spec.domain.classify(state) != Region::Interior) {
                alive = false;
                break;
            }
        }
        if (alive && terminal_indicator(spec, state)) ++survivors;
    }
    const double estimate = static_cast<double>(survivors) / n_paths;
    const double std_error = std::sqrt(estimate * (1.0 - estimate) / n_paths);
    return {estimate, std_error};
}

SpaceTimeField feynman_kac_field(const ProblemSpec& spec, const Grid& grid,
                                 std::vector<double> times, int n_paths, double dt,
                                 std::uint64_t seed, int threads) {
    if (!spec.horizon.is_finite()) throw std::invalid_argument("feynman_kac_field: finite horizon only");
    if (times.size() < 2) throw std::invalid_argument("feynman_kac_field: need >= 2 slices");
    const int n_time_slices = static_cast<int>(times.size());

    SpaceTimeField field;
    field.meta.seed = seed;
    field.meta.dt = dt;
    field.meta.n_paths = n_paths;
    field.meta.solver = "feynman-kac";
    field.times = std::move(times);
    field.slices.assign(n_time_slices, Vec::Zero(static_cast<Eigen::Index>(grid.num_nodes())));

    // Terminal slice: target indicator, exact {0, 1}.
    {
        Vec& v = field.slices.back();
        for (std::size_t node = 0; node < grid.num_nodes(); ++node)
            v[static_cast<Eigen::Index>(node)] =
                terminal_indicator(spec, grid.node_coord(node)) ? 1.0 : 0.0;
    }

    const auto& interior = grid.interior_nodes();
    const std::size_t per_slice = interior.size();
    const std::size_t work = per_slice * static_cast<std::size_t>(n_time_slices - 1);
    parallel_for(work, threads, [&](std::size_t w) {
        const int slice = static_cast<int>(w / per_slice);
        const std::size_t node = interior[w % per_slice];
        const std::uint32_t stream_node =
            static_cast<std::uint32_t>(slice * grid.num_nodes() + node);
        const auto est = feynman_kac_point(spec, field.times[slice], grid.node_coord(node),
                                           n_paths, dt, seed, stream_node);
        field.slices[slice][static_cast<Eigen::Index>(node)] = est.estimate;
    });

    field.enforce_probability_bounds(grid);
    return field;
}

SpaceTimeField feynman_kac_field(const ProblemSpec& spec, const Grid& grid, int n_time_slices,
                                 int n_paths, double dt, std::uint64_t seed, int threads) {
    return feynman_kac_field(spec, grid, graded_time_grid(spec.horizon.T(), n_time_slices, 0),
                             n_paths, dt, seed, threads);
}

}  // namespace invar
