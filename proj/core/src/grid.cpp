#include "invar/pde/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace invar {

Grid Grid::over_domain(const Domain& domain, double spacing) {
    return over_domain(domain, Vec::Constant(domain.dim(), spacing).eval());
}

Grid Grid::over_domain(const Domain& domain, const Vec& spacing) {
    if (!(spacing.array() > 0.0).all())
        throw std::invalid_argument("grid spacing must be positive");
    if (spacing.size() != domain.dim())
        throw std::invalid_argument("grid spacing dimension mismatch");
    const Box box = domain.bounding_box();
    const Eigen::Index n = box.lower.size();

    Grid g;
    g.origin_ = box.lower;
    g.counts_.resize(n);
    g.spacing_.resize(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const double extent = box.upper[a] - box.lower[a];
        const int cells = std::max(1, static_cast<int>(std::llround(extent / spacing[a])));
        g.counts_[a] = cells + 1;
        g.spacing_[a] = extent / cells;
    }
    g.total_ = 1;
    for (Eigen::Index a = 0; a < n; ++a) g.total_ *= static_cast<std::size_t>(g.counts_[a]);

    const double tol = domain.default_boundary_tol();
    g.interior_.assign(g.total_, 0);
    g.boundary_.assign(g.total_, 0);
    {
        Eigen::VectorXi idx = Eigen::VectorXi::Zero(n);
        Vec x(n);
        for (std::size_t flat = 0; flat < g.total_; ++flat) {
            for (Eigen::Index a = 0; a < n; ++a) x[a] = g.origin_[a] + idx[a] * g.spacing_[a];
            const Region r = domain.classify(x, tol);
            if (r == Region::Interior) g.interior_[flat] = 1;
            if (r == Region::Boundary) g.boundary_[flat] = 1;
            for (Eigen::Index a = n - 1; a >= 0; --a) {
                if (++idx[a] < g.counts_[a]) break;
                idx[a] = 0;
            }
        }
    }

    // Non-interior nodes adjacent (3^n neighborhood) to an interior node
    // also carry Dirichlet data.
    {
        Eigen::VectorXi idx = Eigen::VectorXi::Zero(n);
        for (std::size_t flat = 0; flat < g.total_; ++flat) {
            if (!g.interior_[flat] && !g.boundary_[flat]) {
                Eigen::VectorXi nb(n);
                std::vector<int> offs(n, -1);
                bool touches = false;
                for (;;) {
                    bool inside = true;
                    for (Eigen::Index a = 0; a < n; ++a) {
                        nb[a] = idx[a] + offs[a];
                        if (nb[a] < 0 || nb[a] >= g.counts_[a]) inside = false;
                    }
                    if (inside && g.interior_[g.flat_index(nb)]) {
                        touches = true;
                        break;
                    }
                    Eigen::Index a = 0;
                    for (; a < n; ++a) {
                        if (++offs[a] <= 1) break;
                        offs[a] = -1;
                    }
                    if (a == n) break;
                }
                if (touches) g.boundary_[flat] = 1;
            }
            for (Eigen::Index a = n - 1; a >= 0; --a) {
                if (++idx[a] < g.counts_[a]) break;
                idx[a] = 0;
            }
        }
    }

    g.interior_index_.assign(g.total_, -1);
    for (std::size_t flat = 0; flat < g.total_; ++flat) {
        if (g.interior_[flat]) {
            g.interior_index_[flat] = static_cast<std::int64_t>(g.interior_nodes_.size());
            g.interior_nodes_.push_back(flat);
        }
    }
    if (g.interior_nodes_.empty())
        throw std::invalid_argument("grid has no interior nodes; refine the spacing");

    // Interior depth by chamfer sweeps (L-inf metric), lattice edge counting
    // as non-interior.
    {
        constexpr int kFar = std::numeric_limits<int>::max() / 4;
        g.depth_.assign(g.total_, kFar);
        for (std::size_t flat = 0; flat < g.total_; ++flat)
            if (!g.interior_[flat]) g.depth_[flat] = 0;
        auto relax = [&](std::size_t flat) {
            if (!g.interior_[flat]) return false;
            const Eigen::VectorXi idx = g.multi_index(flat);
            int best = g.depth_[flat];
            Eigen::VectorXi nb(n);
            std::vector<int> offs(n, -1);
            for (;;) {
                bool inside = true;
                for (Eigen::Index a = 0; a < n; ++a) {
                    nb[a] = idx[a] + offs[a];
                    if (nb[a] < 0 || nb[a] >= g.counts_[a]) inside = false;
                }
                const int v = inside ? g.depth_[g.flat_index(nb)] : 0;
                best = std::min(best, v + 1);
                Eigen::Index a = 0;
                for (; a < n; ++a) {
                    if (++offs[a] <= 1) break;
                    offs[a] = -1;
                }
                if (a == n) break;
            }
            if (best < g.depth_[flat]) {
                g.depth_[flat] = best;
                return true;
            }
            return false;
        };
        for (int pass = 0; pass < 8; ++pass) {
            bool changed = false;
            if (pass % 2 == 0) {
                for (std::size_t flat = 0; flat < g.total_; ++flat) changed |= relax(flat);
            } else {
                for (std::size_t flat = g.total_; flat-- > 0;) changed |= relax(flat);
            }
            if (!changed) break;
        }
    }

    return g;
}

Eigen::VectorXi Grid::multi_index(std::size_t flat) const {
    const Eigen::Index n = counts_.size();
    Eigen::VectorXi idx(n);
    for (Eigen::Index a = n - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % static_cast<std::size_t>(counts_[a]));
        flat /= static_cast<std::size_t>(counts_[a]);
    }
    return idx;
}

std::size_t Grid::flat_index(const Eigen::VectorXi& idx) const {
    std::size_t flat = 0;
    for (Eigen::Index a = 0; a < counts_.size(); ++a)
        flat = flat * static_cast<std::size_t>(counts_[a]) + static_cast<std::size_t>(idx[a]);
    return flat;
}

Vec Grid::node_coord(std::size_t flat) const {
    const Eigen::VectorXi idx = multi_index(flat);
    Vec x(counts_.size());
    for (Eigen::Index a = 0; a < counts_.size(); ++a)
        x[a] = origin_[a] + idx[a] * spacing_[a];
    return x;
}

void Grid::locate(const Vec& x, Eigen::VectorXi& cell, Vec& frac) const {
    const Eigen::Index n = counts_.size();
    cell.resize(n);
    frac.resize(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        double u = (x[a] - origin_[a]) / spacing_[a];
        u = std::clamp(u, 0.0, static_cast<double>(counts_[a] - 1));
        int c = static_cast<int>(u);
        if (c > counts_[a] - 2) c = counts_[a] - 2;
        cell[a] = c;
        frac[a] = u - c;
    }
}

}  // namespace invar
