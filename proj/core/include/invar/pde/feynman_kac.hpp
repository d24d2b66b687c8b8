#pragma once

#include "invar/pde/field.hpp"

namespace invar {

struct FkEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Survival/target-hit probability at one space-time point, estimated as the
/// fraction of Euler-Maruyama sample paths of the uncontrolled prior that
/// never leave the invariance set on [t, T] (and land in the target at T,
/// when one is given). Absorption is the per-step membership check; no exit
/// correction, so the estimate carries O(sqrt(dt)) boundary bias.
///
/// Deterministic in (seed, stream_node, n_paths, dt): path p draws from the
/// counter-based substream (seed, stream_node, p) regardless of threading.
/// A point on the boundary returns exactly (0, 0).
FkEstimate feynman_kac_point(const ProblemSpec& spec, double t, const Vec& x, int n_paths,
                             double dt, std::uint64_t seed, std::uint32_t stream_node = 0);

/// Evaluates feynman_kac_point at every interior node of every time slice;
/// boundary nodes are 0, the terminal slice is the target indicator. Node
/// substreams are keyed by the space-time node index, so the field is
/// identical for any worker count. The int overload uses uniform slices.
SpaceTimeField feynman_kac_field(const ProblemSpec& spec, const Grid& grid,
                                 std::vector<double> times, int n_paths, double dt,
                                 std::uint64_t seed, int threads = 0);
SpaceTimeField feynman_kac_field(const ProblemSpec& spec, const Grid& grid, int n_time_slices,
                                 int n_paths, double dt, std::uint64_t seed, int threads = 0);

}  // namespace invar
