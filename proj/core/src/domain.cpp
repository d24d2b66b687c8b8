#include "invar/problem/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace invar {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Signed distance to the boundary, positive inside, negative outside.
double signed_boundary_distance(const detail::HyperRectangle& r, const Vec& x) {
    double d = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        d = std::min(d, std::min(x[i] - r.lower[i], r.upper[i] - x[i]));
    }
    return d;
}

double signed_boundary_distance(const detail::Disk& d, const Vec& x) {
    return d.radius - (x - d.center).norm();
}

double signed_boundary_distance(const detail::AnnulusRing& a, const Vec& x) {
    const double r = x.norm();
    return std::min(r - a.r1, a.r2 - r);
}

double signed_boundary_distance(const detail::WeylChamber& w, const Vec& x) {
    // Distance to the nearest ordering hyperplane x_i = x_{i+1}.
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < w.dimension; ++i) {
        d = std::min(d, (x[i + 1] - x[i]) / std::numbers::sqrt2);
    }
    return d;
}

std::size_t lattice_node_count(const detail::LatticeMask& m) {
    std::size_t n = 1;
    for (Eigen::Index a = 0; a < m.counts.size(); ++a)
        n *= static_cast<std::size_t>(m.counts[a]);
    return n;
}

std::size_t lattice_flat(const detail::LatticeMask& m, const Eigen::VectorXi& idx) {
    std::size_t flat = 0;
    for (Eigen::Index a = 0; a < m.counts.size(); ++a)
        flat = flat * static_cast<std::size_t>(m.counts[a]) + static_cast<std::size_t>(idx[a]);
    return flat;
}

// Nearest-node region estimate: interior when the surrounding node depth says
// the point is at least one node away from the non-interior set.
Region lattice_classify(const detail::LatticeMask& m, const Vec& x, double tol) {
    const Eigen::Index n = m.counts.size();
    Eigen::VectorXi idx(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const double u = (x[a] - m.origin[a]) / m.spacing[a];
        const auto i = static_cast<std::int64_t>(std::llround(u));
        if (i < 0 || i >= m.counts[a]) return Region::Exterior;
        idx[a] = static_cast<int>(i);
    }
    const std::size_t flat = lattice_flat(m, idx);
    if (!m.interior[flat]) return Region::Exterior;
    const double h_min = m.spacing.minCoeff();
    const double dist = (m.l_inf_depth[flat] - 1) * h_min;
    return dist <= tol ? Region::Boundary : Region::Interior;
}

double lattice_boundary_distance(const detail::LatticeMask& m, const Vec& x) {
    const Eigen::Index n = m.counts.size();
    Eigen::VectorXi idx(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const double u = (x[a] - m.origin[a]) / m.spacing[a];
        const auto i = static_cast<std::int64_t>(std::llround(u));
        if (i < 0 || i >= m.counts[a]) return 0.0;
        idx[a] = static_cast<int>(i);
    }
    const std::size_t flat = lattice_flat(m, idx);
    if (!m.interior[flat]) return 0.0;
    return std::max(0.0, (m.l_inf_depth[flat] - 1) * m.spacing.minCoeff());
}

}  // namespace

Domain Domain::hyper_rectangle(Vec lower, Vec upper) {
    require(lower.size() == upper.size(), "rectangle bounds must share a dimension");
    require(lower.size() >= 1, "rectangle needs at least one dimension");
    require((lower.array() < upper.array()).all(), "rectangle requires lower < upper elementwise");
    return Domain(detail::HyperRectangle{std::move(lower), std::move(upper)});
}

Domain Domain::disk(Vec center, double radius) {
    require(center.size() == 2, "disk center must be a 2-vector");
    require(radius > 0.0, "disk radius must be positive");
    return Domain(detail::Disk{std::move(center), radius});
}

Domain Domain::annulus(double r1, double r2) {
    require(0.0 < r1 && r1 < r2, "annulus requires 0 < r1 < r2");
    return Domain(detail::AnnulusRing{r1, r2});
}

Domain Domain::weyl_chamber(int dimension, Box bounding_box) {
    require(dimension >= 2, "Weyl chamber needs dimension >= 2");
    require(bounding_box.lower.size() == dimension && bounding_box.upper.size() == dimension,
            "Weyl chamber bounding box dimension mismatch");
    require((bounding_box.lower.array() < bounding_box.upper.array()).all(),
            "Weyl chamber bounding box must be nonempty");
    return Domain(detail::WeylChamber{dimension, std::move(bounding_box)});
}

Domain Domain::grid_mask_of(const Domain& shape, double spacing) {
    require(spacing > 0.0, "grid mask spacing must be positive");
    const Box box = shape.bounding_box();
    const Eigen::Index n = box.lower.size();

    detail::LatticeMask m;
    m.origin = box.lower;
    m.counts.resize(n);
    m.spacing.resize(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const double extent = box.upper[a] - box.lower[a];
        const int cells = std::max(1, static_cast<int>(std::llround(extent / spacing)));
        m.counts[a] = cells + 1;
        m.spacing[a] = extent / cells;
    }

    const std::size_t total = lattice_node_count(m);
    m.interior.assign(total, 0);
    const double tol = shape.default_boundary_tol();
    Eigen::VectorXi idx = Eigen::VectorXi::Zero(n);
    Vec x(n);
    for (std::size_t flat = 0; flat < total; ++flat) {
        for (Eigen::Index a = 0; a < n; ++a) x[a] = m.origin[a] + idx[a] * m.spacing[a];
        m.interior[flat] = shape.classify(x, tol) == Region::Interior ? 1 : 0;
        for (Eigen::Index a = n - 1; a >= 0; --a) {
            if (++idx[a] < m.counts[a]) break;
            idx[a] = 0;
        }
    }

    // Chamfer transform: L-inf node distance to the nearest non-interior node,
    // with everything outside the lattice counting as non-interior. Sweeps
    // alternate direction until the fixpoint (chessboard metric converges in
    // two passes; the cap is a safeguard).
    constexpr std::int32_t kFar = std::numeric_limits<std::int32_t>::max() / 4;
    m.l_inf_depth.assign(total, kFar);
    std::vector<Eigen::VectorXi> coords(total, Eigen::VectorXi(n));
    {
        Eigen::VectorXi c = Eigen::VectorXi::Zero(n);
        for (std::size_t flat = 0; flat < total; ++flat) {
            coords[flat] = c;
            if (!m.interior[flat]) m.l_inf_depth[flat] = 0;
            for (Eigen::Index a = n - 1; a >= 0; --a) {
                if (++c[a] < m.counts[a]) break;
                c[a] = 0;
            }
        }
    }
    auto relax = [&](std::size_t flat) {
        if (!m.interior[flat]) return false;
        const auto& c = coords[flat];
        std::int32_t best = m.l_inf_depth[flat];
        Eigen::VectorXi nb(n);
        std::vector<int> offs(n, -1);
        for (;;) {
            bool inside = true;
            for (Eigen::Index a = 0; a < n; ++a) {
                nb[a] = c[a] + offs[a];
                if (nb[a] < 0 || nb[a] >= m.counts[a]) inside = false;
            }
            const std::int32_t nb_val = inside ? m.l_inf_depth[lattice_flat(m, nb)] : 0;
            best = std::min(best, nb_val + 1);
            Eigen::Index a = 0;
            for (; a < n; ++a) {
                if (++offs[a] <= 1) break;
                offs[a] = -1;
            }
            if (a == n) break;
        }
        if (best < m.l_inf_depth[flat]) {
            m.l_inf_depth[flat] = best;
            return true;
        }
        return false;
    };
    for (int pass = 0; pass < 8; ++pass) {
        bool changed = false;
        if (pass % 2 == 0) {
            for (std::size_t flat = 0; flat < total; ++flat) changed |= relax(flat);
        } else {
            for (std::size_t flat = total; flat-- > 0;) changed |= relax(flat);
        }
        if (!changed) break;
    }

    return Domain(std::move(m));
}

int Domain::dim() const {
    return std::visit(
        [](const auto& d) -> int {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, detail::HyperRectangle>)
                return static_cast<int>(d.lower.size());
            else if constexpr (std::is_same_v<T, detail::Disk>)
                return 2;
            else if constexpr (std::is_same_v<T, detail::AnnulusRing>)
                return 2;
            else if constexpr (std::is_same_v<T, detail::WeylChamber>)
                return d.dimension;
            else
                return static_cast<int>(d.counts.size());
        },
        v_);
}

Box Domain::bounding_box() const {
    return std::visit(
        [](const auto& d) -> Box {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, detail::HyperRectangle>) {
                return Box{d.lower, d.upper};
            } else if constexpr (std::is_same_v<T, detail::Disk>) {
                return Box{d.center.array() - d.radius, d.center.array() + d.radius};
            } else if constexpr (std::is_same_v<T, detail::AnnulusRing>) {
                return Box{Vec::Constant(2, -d.r2), Vec::Constant(2, d.r2)};
            } else if constexpr (std::is_same_v<T, detail::WeylChamber>) {
                return d.box;
            } else {
                Vec upper(d.counts.size());
                for (Eigen::Index a = 0; a < d.counts.size(); ++a)
                    upper[a] = d.origin[a] + (d.counts[a] - 1) * d.spacing[a];
                return Box{d.origin, upper};
            }
        },
        v_);
}

double Domain::default_boundary_tol() const {
    return 1e-9 * bounding_box().diameter();
}

Region Domain::classify(const Vec& x, double boundary_tol) const {
    if (x.size() != dim()) throw std::invalid_argument("point dimension does not match domain");
    if (is_grid_mask()) return lattice_classify(as_grid_mask(), x, boundary_tol);
    const double d = std::visit(
        [&](const auto& dom) -> double {
            using T = std::decay_t<decltype(dom)>;
            if constexpr (std::is_same_v<T, detail::LatticeMask>) {
                return 0.0;  // unreachable
            } else {
                return signed_boundary_distance(dom, x);
            }
        },
        v_);
    if (std::abs(d) <= boundary_tol) return Region::Boundary;
    return d > 0.0 ? Region::Interior : Region::Exterior;
}

double Domain::boundary_distance(const Vec& x) const {
    if (x.size() != dim()) throw std::invalid_argument("point dimension does not match domain");
    if (is_grid_mask()) return lattice_boundary_distance(as_grid_mask(), x);
    const double d = std::visit(
        [&](const auto& dom) -> double {
            using T = std::decay_t<decltype(dom)>;
            if constexpr (std::is_same_v<T, detail::LatticeMask>) {
                return 0.0;  // unreachable
            } else {
                return signed_boundary_distance(dom, x);
            }
        },
        v_);
    return std::max(0.0, d);
}

bool Domain::is_rectangle() const { return std::holds_alternative<detail::HyperRectangle>(v_); }
bool Domain::is_disk() const { return std::holds_alternative<detail::Disk>(v_); }
bool Domain::is_annulus() const { return std::holds_alternative<detail::AnnulusRing>(v_); }
bool Domain::is_weyl_chamber() const { return std::holds_alternative<detail::WeylChamber>(v_); }
bool Domain::is_grid_mask() const { return std::holds_alternative<detail::LatticeMask>(v_); }

const detail::HyperRectangle& Domain::as_rectangle() const {
    return std::get<detail::HyperRectangle>(v_);
}
const detail::Disk& Domain::as_disk() const { return std::get<detail::Disk>(v_); }
const detail::AnnulusRing& Domain::as_annulus() const { return std::get<detail::AnnulusRing>(v_); }
const detail::WeylChamber& Domain::as_weyl_chamber() const {
    return std::get<detail::WeylChamber>(v_);
}
const detail::LatticeMask& Domain::as_grid_mask() const { return std::get<detail::LatticeMask>(v_); }

}  // namespace invar
