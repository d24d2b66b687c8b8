#pragma once

#include "invar/eig/eigenpair.hpp"
#include "invar/pde/field.hpp"

namespace invar {

/// Default log floor (relative to the field max) and Euclidean clamp for
/// score magnitudes. Near the boundary h -> 0 and the conditioned drift is
/// genuinely singular; the clamp keeps time stepping finite while leaving
/// the deep interior untouched.
inline constexpr double kScoreFloorRel = 1e-12;
inline constexpr double kScoreClamp = 1e3;

/// Gridded score vector field s = Sigma grad(h) / max(h, eps): one slice per
/// field time (finite horizon) or a single time-invariant slice (infinite
/// horizon). Values are built on the grid first (differentiate, then
/// interpolate); sampling is multilinear in space and linear in time.
/// Non-interior nodes carry the score of the nearest interior node so cells
/// straddling the boundary interpolate sanely.
class ScoreField {
public:
    /// Finite-horizon score from a gridded h field. Gradients by central
    /// differences, one-sided at nodes whose axis neighbor is not interior;
    /// per-node Euclidean clamp to s_max. Degenerate Sigma restricts the
    /// score to the noise channels by construction.
    static ScoreField finite(const SpaceTimeField& field, const Grid& grid,
                             const DynamicsField& dynamics, double eps_rel = kScoreFloorRel,
                             double s_max = kScoreClamp);

    /// Infinite-horizon score from a positive interior eigenfunction;
    /// stored once and reused for all t.
    static ScoreField infinite(const Vec& psi0_interior, const Grid& grid,
                               const DynamicsField& dynamics, double eps_rel = kScoreFloorRel,
                               double s_max = kScoreClamp);

    bool time_invariant() const { return time_invariant_; }
    const std::vector<double>& times() const { return times_; }
    const Grid& grid() const { return grid_; }
    int dim() const { return grid_.dim(); }

    /// Score vector at a stored node of a stored slice (slice 0 when
    /// time-invariant).
    Vec at_node(int slice, std::size_t node) const { return values_[slice].col(node); }

    /// Score at an arbitrary (t, x).
    Vec sample(double t, const Vec& x) const;

private:
    ScoreField(Grid grid, bool time_invariant) : grid_(std::move(grid)), time_invariant_(time_invariant) {}
    static Mat slice_scores(const Vec& node_values, const Grid& grid, const DynamicsField& dynamics,
                            double t, double eps_abs, double s_max);
    static void extend_to_non_interior(Mat& values, const Grid& grid);

    Grid grid_;
    bool time_invariant_;
    std::vector<double> times_;
    std::vector<Mat> values_;  // per slice: dim x num_nodes
};

}  // namespace invar
