#include "invar/certify/hjb.hpp"

#include <cmath>
#include <stdexcept>

namespace invar {

double hjb_residual(const SpaceTimeField& field, const Grid& grid, const DynamicsField& dynamics,
                    double eps_rel, double terminal_margin, double boundary_margin) {
    const int K = field.num_slices();
    if (K < 3) throw std::invalid_argument("hjb_residual: need at least 3 time slices");
    const int n = grid.dim();
    const double t_cutoff = field.times.back() - std::max(0.0, terminal_margin);
    const int min_depth =
        std::max(3, static_cast<int>(std::ceil(boundary_margin / grid.spacing().minCoeff())));

    // Standing hypothesis G G' = Sigma, checked at a sample of interior nodes.
    {
        const std::size_t stride = std::max<std::size_t>(1, grid.num_interior() / 16);
        for (std::size_t r = 0; r < grid.num_interior(); r += stride) {
            const Vec x = grid.node_coord(grid.interior_nodes()[r]);
            const Mat G = dynamics.input_matrix(field.times[0], x);
            const Mat Sigma = sigma_to_Sigma(dynamics, field.times[0], x);
            const double scale = std::max(1.0, Sigma.cwiseAbs().maxCoeff());
            if (((G * G.transpose() - Sigma).cwiseAbs().maxCoeff()) > 1e-10 * scale)
                throw std::invalid_argument("hjb_residual: G G' != Sigma for this problem data");
        }
    }

    double field_max = 0.0;
    for (const Vec& s : field.slices) field_max = std::max(field_max, s.maxCoeff());
    const double eps_abs = eps_rel * std::max(field_max, 1e-300);

    // V = log max(h, eps) per slice over all nodes.
    std::vector<Vec> V(K);
    for (int j = 0; j < K; ++j)
        V[j] = field.slices[j].array().max(eps_abs).log().matrix();

    double worst = 0.0;
    Vec grad(n);
    Mat hess(n, n);
    for (int j = 1; j + 1 <= K - 1; ++j) {
        if (field.times[j + 1] > t_cutoff + 1e-12) break;
        const double t = field.times[j];
        const double two_dt = field.times[j + 1] - field.times[j - 1];
        for (std::size_t node : grid.interior_nodes()) {
            if (grid.interior_depth(node) < min_depth) continue;  // boundary layer excluded
            const Eigen::VectorXi idx = grid.multi_index(node);
            const auto flat_of = [&](const Eigen::VectorXi& q) {
                return static_cast<Eigen::Index>(grid.flat_index(q));
            };
            const double v0 = V[j][flat_of(idx)];
            for (int a = 0; a < n; ++a) {
                Eigen::VectorXi p = idx, m = idx;
                p[a] += 1;
                m[a] -= 1;
                const double ha = grid.spacing()[a];
                grad[a] = (V[j][flat_of(p)] - V[j][flat_of(m)]) / (2.0 * ha);
                hess(a, a) = (V[j][flat_of(p)] - 2.0 * v0 + V[j][flat_of(m)]) / (ha * ha);
                for (int b = a + 1; b < n; ++b) {
                    Eigen::VectorXi pp = idx, pm = idx, mp = idx, mm = idx;
                    pp[a] += 1;
                    pp[b] += 1;
                    pm[a] += 1;
                    pm[b] -= 1;
                    mp[a] -= 1;
                    mp[b] += 1;
                    mm[a] -= 1;
                    mm[b] -= 1;
                    const double hb = grid.spacing()[b];
                    hess(a, b) = hess(b, a) = (V[j][flat_of(pp)] - V[j][flat_of(pm)] -
                                               V[j][flat_of(mp)] + V[j][flat_of(mm)]) /
                                              (4.0 * ha * hb);
                }
            }
            const Vec x = grid.node_coord(node);
            const Mat Sigma = sigma_to_Sigma(dynamics, t, x);
            const Vec f = dynamics.drift(t, x);
            const double dvdt = (V[j + 1][flat_of(idx)] - V[j - 1][flat_of(idx)]) / two_dt;
            const double residual = dvdt + 0.5 * grad.dot(Sigma * grad) + grad.dot(f) +
                                    0.5 * (Sigma.array() * hess.array()).sum();
            worst = std::max(worst, std::abs(residual));
        }
    }
    return worst;
}

}  // namespace invar
