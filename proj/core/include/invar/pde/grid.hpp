#pragma once

#include "invar/problem/domain.hpp"

#include <cstdint>
#include <vector>

namespace invar {

/// Uniform axis-aligned lattice over a domain's bounding box with interior
/// and boundary masks. Node coordinates are reproducible as
/// origin + index * spacing, exactly.
class Grid {
public:
    /// Covers the domain's bounding box with nodes at roughly the requested
    /// spacing (per-axis spacing snaps so nodes land on the box faces).
    /// Interior = nodes classified strictly inside; boundary = non-interior
    /// nodes touching an interior node in the full 3^n neighborhood, plus
    /// nodes within classification tolerance of the true boundary.
    static Grid over_domain(const Domain& domain, double spacing);
    /// Same, with an independent target spacing per axis.
    static Grid over_domain(const Domain& domain, const Vec& spacing);

    int dim() const { return static_cast<int>(counts_.size()); }
    const Eigen::VectorXi& counts() const { return counts_; }
    const Vec& spacing() const { return spacing_; }
    const Vec& origin() const { return origin_; }

    std::size_t num_nodes() const { return total_; }
    std::size_t num_interior() const { return interior_nodes_.size(); }

    Eigen::VectorXi multi_index(std::size_t flat) const;
    std::size_t flat_index(const Eigen::VectorXi& idx) const;
    Vec node_coord(std::size_t flat) const;

    bool is_interior(std::size_t flat) const { return interior_[flat] != 0; }
    bool is_boundary(std::size_t flat) const { return boundary_[flat] != 0; }

    /// Compact interior numbering: flat node -> [0, num_interior), or -1.
    std::int64_t interior_index(std::size_t flat) const { return interior_index_[flat]; }
    const std::vector<std::size_t>& interior_nodes() const { return interior_nodes_; }

    /// L-inf index distance from an interior node to the nearest
    /// non-interior node (>= 1 for interior nodes, 0 otherwise).
    int interior_depth(std::size_t flat) const { return depth_[flat]; }

    /// Containing cell and multilinear weights for an arbitrary point;
    /// the point is clamped to the lattice hull.
    void locate(const Vec& x, Eigen::VectorXi& cell, Vec& frac) const;

private:
    Eigen::VectorXi counts_;
    Vec spacing_, origin_;
    std::size_t total_ = 0;
    std::vector<std::uint8_t> interior_, boundary_;
    std::vector<std::int64_t> interior_index_;
    std::vector<std::size_t> interior_nodes_;
    std::vector<int> depth_;
};

}  // namespace invar
