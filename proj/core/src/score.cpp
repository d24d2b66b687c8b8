#include "invar/certify/score.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace invar {

Mat ScoreField::slice_scores(const Vec& node_values, const Grid& grid,
                             const DynamicsField& dynamics, double t, double eps_abs,
                             double s_max) {
    const int n = grid.dim();
    Mat scores = Mat::Zero(n, static_cast<Eigen::Index>(grid.num_nodes()));
    Vec grad(n);
    for (std::size_t node : grid.interior_nodes()) {
        const Eigen::VectorXi idx = grid.multi_index(node);
        const double h_here = node_values[static_cast<Eigen::Index>(node)];
        for (int a = 0; a < n; ++a) {
            const double step = grid.spacing()[a];
            Eigen::VectorXi p = idx, m = idx;
            p[a] += 1;
            m[a] -= 1;
            const bool has_p = p[a] < grid.counts()[a] && grid.is_interior(grid.flat_index(p));
            const bool has_m = m[a] >= 0 && grid.is_interior(grid.flat_index(m));
            const double vp = has_p ? node_values[static_cast<Eigen::Index>(grid.flat_index(p))] : 0.0;
            const double vm = has_m ? node_values[static_cast<Eigen::Index>(grid.flat_index(m))] : 0.0;
            if (has_p && has_m) {
                grad[a] = (vp - vm) / (2.0 * step);
            } else if (has_p) {
                grad[a] = (vp - h_here) / step;
            } else if (has_m) {
                grad[a] = (h_here - vm) / step;
            } else {
                grad[a] = 0.0;
            }
        }
        const Vec x = grid.node_coord(node);
        Vec s = sigma_to_Sigma(dynamics, t, x) * (grad / std::max(h_here, eps_abs));
        const double mag = s.norm();
        if (mag > s_max) s *= s_max / mag;
        scores.col(static_cast<Eigen::Index>(node)) = s;
    }
    return scores;
}

void ScoreField::extend_to_non_interior(Mat& values, const Grid& grid) {
    // Plain BFS from the interior set; every seed has depth zero, so FIFO
    // order yields nearest-interior assignment in the L1 lattice metric.
    const std::size_t total = grid.num_nodes();
    std::vector<std::int8_t> known(total, 0);
    std::deque<std::size_t> queue;
    for (std::size_t node : grid.interior_nodes()) {
        known[node] = 1;
        queue.push_back(node);
    }
    const int n = grid.dim();
    while (!queue.empty()) {
        const std::size_t node = queue.front();
        queue.pop_front();
        const Eigen::VectorXi idx = grid.multi_index(node);
        for (int a = 0; a < n; ++a) {
            for (int d = -1; d <= 1; d += 2) {
                Eigen::VectorXi nb = idx;
                nb[a] += d;
                if (nb[a] < 0 || nb[a] >= grid.counts()[a]) continue;
                const std::size_t nf = grid.flat_index(nb);
                if (known[nf]) continue;
                known[nf] = 1;
                values.col(static_cast<Eigen::Index>(nf)) = values.col(static_cast<Eigen::Index>(node));
                queue.push_back(nf);
            }
        }
    }
}

ScoreField ScoreField::finite(const SpaceTimeField& field, const Grid& grid,
                              const DynamicsField& dynamics, double eps_rel, double s_max) {
    if (field.slices.empty() ||
        field.slices.front().size() != static_cast<Eigen::Index>(grid.num_nodes()))
        throw std::invalid_argument("ScoreField::finite: field/grid shape mismatch");
    double field_max = 0.0;
    for (const Vec& s : field.slices) field_max = std::max(field_max, s.maxCoeff());
    const double eps_abs = eps_rel * std::max(field_max, 1e-300);

    ScoreField out(grid, /*time_invariant=*/false);
    out.times_ = field.times;
    out.values_.reserve(field.slices.size());
    for (std::size_t j = 0; j < field.slices.size(); ++j) {
        Mat scores = slice_scores(field.slices[j], grid, dynamics, field.times[j], eps_abs, s_max);
        extend_to_non_interior(scores, grid);
        out.values_.push_back(std::move(scores));
    }
    return out;
}

ScoreField ScoreField::infinite(const Vec& psi0_interior, const Grid& grid,
                                const DynamicsField& dynamics, double eps_rel, double s_max) {
    if (psi0_interior.size() != static_cast<Eigen::Index>(grid.num_interior()))
        throw std::invalid_argument("ScoreField::infinite: psi0/grid shape mismatch");
    if (!(psi0_interior.minCoeff() > 0.0))
        throw std::invalid_argument("ScoreField::infinite: psi0 must be positive on the interior");

    Vec node_values = Vec::Zero(static_cast<Eigen::Index>(grid.num_nodes()));
    for (std::size_t r = 0; r < grid.num_interior(); ++r)
        node_values[static_cast<Eigen::Index>(grid.interior_nodes()[r])] =
            psi0_interior[static_cast<Eigen::Index>(r)];

    const double eps_abs = eps_rel * psi0_interior.maxCoeff();
    ScoreField out(grid, /*time_invariant=*/true);
    out.times_ = {0.0};
    Mat scores = slice_scores(node_values, grid, dynamics, 0.0, eps_abs, s_max);
    extend_to_non_interior(scores, grid);
    out.values_.push_back(std::move(scores));
    return out;
}

Vec ScoreField::sample(double t, const Vec& x) const {
    Eigen::VectorXi cell;
    Vec frac;
    grid_.locate(x, cell, frac);
    const int n = grid_.dim();

    auto sample_slice = [&](int slice) {
        Vec acc = Vec::Zero(n);
        const int corners = 1 << n;
        for (int c = 0; c < corners; ++c) {
            double w = 1.0;
            Eigen::VectorXi idx = cell;
            for (int a = 0; a < n; ++a) {
                if (c & (1 << a)) {
                    idx[a] += 1;
                    w *= frac[a];
                } else {
                    w *= 1.0 - frac[a];
                }
            }
            if (w == 0.0) continue;
            acc += w * values_[slice].col(static_cast<Eigen::Index>(grid_.flat_index(idx)));
        }
        return acc;
    };

    if (time_invariant_ || times_.size() == 1) return sample_slice(0);

    const double t_clamped = std::clamp(t, times_.front(), times_.back());
    const auto upper = std::upper_bound(times_.begin(), times_.end(), t_clamped);
    int j1 = static_cast<int>(std::distance(times_.begin(), upper));
    j1 = std::clamp(j1, 1, static_cast<int>(times_.size()) - 1);
    const int j0 = j1 - 1;
    const double span = times_[j1] - times_[j0];
    const double w1 = span > 0.0 ? (t_clamped - times_[j0]) / span : 0.0;
    return (1.0 - w1) * sample_slice(j0) + w1 * sample_slice(j1);
}

}  // namespace invar
