#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

namespace invar {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Three-way point classification against a domain.
enum class Region { Interior, Boundary, Exterior };

struct Box {
    Vec lower;
    Vec upper;
    double diameter() const { return (upper - lower).norm(); }
};

namespace detail {

struct HyperRectangle {
    Vec lower, upper;
};

struct Disk {
    Vec center;  // 2-vector
    double radius;
};

/// Annular ring r1 < |x| < r2, centered at the origin. Target-set use only.
struct AnnulusRing {
    double r1, r2;
};

/// Ordered cone x1 < x2 < ... < xn. Unbounded; the bounding box is supplied
/// by the caller and used for gridding/sampling only.
struct WeylChamber {
    int dimension;
    Box box;
};

/// Explicit interior indicator over a regular lattice. Covers irregular
/// shapes at first order; off-node queries use the containing cell.
struct LatticeMask {
    Vec origin;
    Vec spacing;
    Eigen::VectorXi counts;
    std::vector<std::uint8_t> interior;   // per node
    std::vector<std::int32_t> l_inf_depth;  // node steps to nearest non-interior
};

}  // namespace detail

/// Invariance/target set with membership, boundary classification within a
/// tolerance, and a bounding box.
class Domain {
public:
    static Domain hyper_rectangle(Vec lower, Vec upper);
    static Domain disk(Vec center, double radius);
    static Domain annulus(double r1, double r2);
    static Domain weyl_chamber(int dimension, Box bounding_box);
    /// Samples `shape` on a lattice of the given spacing over its bounding
    /// box; a node is marked interior iff strictly inside `shape`.
    static Domain grid_mask_of(const Domain& shape, double spacing);

    int dim() const;
    Box bounding_box() const;

    /// Default classification tolerance: 1e-9 x bounding-box diameter.
    double default_boundary_tol() const;

    Region classify(const Vec& x, double boundary_tol) const;
    Region classify(const Vec& x) const { return classify(x, default_boundary_tol()); }

    /// Distance from an interior point to the boundary (0 outside). For
    /// lattice masks this is a first-order estimate from the node depth map.
    double boundary_distance(const Vec& x) const;

    bool is_rectangle() const;
    bool is_disk() const;
    bool is_annulus() const;
    bool is_weyl_chamber() const;
    bool is_grid_mask() const;

    const detail::HyperRectangle& as_rectangle() const;
    const detail::Disk& as_disk() const;
    const detail::AnnulusRing& as_annulus() const;
    const detail::WeylChamber& as_weyl_chamber() const;
    const detail::LatticeMask& as_grid_mask() const;

private:
    using Variant = std::variant<detail::HyperRectangle, detail::Disk,
                                 detail::AnnulusRing, detail::WeylChamber,
                                 detail::LatticeMask>;
    explicit Domain(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

}  // namespace invar
