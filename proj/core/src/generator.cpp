#include "invar/pde/generator.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace invar {

GeneratorMatrix discretize_generator(const Grid& grid, const DynamicsField& dynamics, double t) {
    const int n = grid.dim();
    const std::size_t n_int = grid.num_interior();
    if (n_int == 0) throw std::invalid_argument("discretize_generator: empty interior");

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(n_int * (2 * n + n * n));

    auto add = [&](std::int64_t row, const Eigen::VectorXi& idx, double coeff) {
        for (Eigen::Index a = 0; a < idx.size(); ++a)
            if (idx[a] < 0 || idx[a] >= grid.counts()[a]) return;  // off lattice: Dirichlet 0
        const std::size_t flat = grid.flat_index(idx);
        const std::int64_t col = grid.interior_index(flat);
        if (col < 0) return;  // boundary/exterior node: Dirichlet 0
        trips.emplace_back(static_cast<int>(row), static_cast<int>(col), coeff);
    };

    for (std::size_t r = 0; r < n_int; ++r) {
        const std::size_t flat = grid.interior_nodes()[r];
        const Eigen::VectorXi idx = grid.multi_index(flat);
        const Vec x = grid.node_coord(flat);

        const Vec f = dynamics.drift(t, x);
        const Mat Sigma = sigma_to_Sigma(dynamics, t, x);
        if (!f.allFinite() || !Sigma.allFinite())
            throw std::runtime_error("discretize_generator: non-finite coefficient");

        const std::int64_t row = static_cast<std::int64_t>(r);
        for (int a = 0; a < n; ++a) {
            const double h = grid.spacing()[a];
            // <f, grad phi>: central first difference.
            const double cf = f[a] / (2.0 * h);
            // 1/2 Sigma_aa d^2/dx_a^2: central second difference.
            const double cs = 0.5 * Sigma(a, a) / (h * h);

            Eigen::VectorXi p = idx, m = idx;
            p[a] += 1;
            m[a] -= 1;
            add(row, p, cf + cs);
            add(row, m, -cf + cs);
            add(row, idx, -2.0 * cs);

            // Mixed terms: 1/2 * 2 * Sigma_ab d^2/dx_a dx_b for a < b by the
            // 4-point cross (pp + mm - pm - mp) / (4 h_a h_b).
            for (int b = a + 1; b < n; ++b) {
                const double cab = Sigma(a, b) / (4.0 * h * grid.spacing()[b]);
                if (cab == 0.0) continue;
                Eigen::VectorXi pp = idx, pm = idx, mp = idx, mm = idx;
                pp[a] += 1;
                pp[b] += 1;
                pm[a] += 1;
                pm[b] -= 1;
                mp[a] -= 1;
                mp[b] += 1;
                mm[a] -= 1;
                mm[b] -= 1;
                add(row, pp, cab);
                add(row, mm, cab);
                add(row, pm, -cab);
                add(row, mp, -cab);
            }
        }
    }

    GeneratorMatrix gen;
    gen.interior_nodes = grid.interior_nodes();
    gen.L.resize(static_cast<int>(n_int), static_cast<int>(n_int));
    gen.L.setFromTriplets(trips.begin(), trips.end());
    gen.L.makeCompressed();
    return gen;
}

Vec apply_generator(const GeneratorMatrix& gen, const Vec& interior_values) {
    if (interior_values.size() != gen.L.rows())
        throw std::invalid_argument("apply_generator: length mismatch");
    return gen.L * interior_values;
}

}  // namespace invar
