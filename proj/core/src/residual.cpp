#include "invar/pde/residual.hpp"

#include <cmath>
#include <stdexcept>

namespace invar {

double pde_residual(const SpaceTimeField& field, const Grid& grid, const DynamicsField& dynamics,
                    double terminal_margin, int min_depth) {
    const int K = field.num_slices();
    if (K < 3) throw std::invalid_argument("pde_residual: need at least 3 time slices");
    const double t_cutoff = field.times.back() - std::max(0.0, terminal_margin);

    const std::size_t n_int = grid.num_interior();
    auto interior_slice = [&](int j) {
        Vec v(static_cast<Eigen::Index>(n_int));
        for (std::size_t r = 0; r < n_int; ++r)
            v[static_cast<Eigen::Index>(r)] =
                field.slices[j][static_cast<Eigen::Index>(grid.interior_nodes()[r])];
        return v;
    };

    double worst = 0.0;
    for (int j = 1; j + 1 <= K - 1; ++j) {
        if (field.times[j + 1] > t_cutoff + 1e-12) break;  // stencil would enter the margin
        const GeneratorMatrix gen = discretize_generator(grid, dynamics, field.times[j]);
        const Vec lh = apply_generator(gen, interior_slice(j));
        const Vec prev = interior_slice(j - 1);
        const Vec next = interior_slice(j + 1);
        const double two_dt = field.times[j + 1] - field.times[j - 1];
        for (std::size_t r = 0; r < n_int; ++r) {
            if (grid.interior_depth(grid.interior_nodes()[r]) < min_depth) continue;
            const auto i = static_cast<Eigen::Index>(r);
            const double dhdt = (next[i] - prev[i]) / two_dt;
            worst = std::max(worst, std::abs(dhdt + lh[i]));
        }
    }
    return worst;
}

}  // namespace invar
