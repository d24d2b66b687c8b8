#pragma once

#include "invar/pde/grid.hpp"
#include "invar/problem/problem_spec.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace invar {

/// Gridded h(t, x): one value array over all grid nodes per time slice.
/// Ascending time grid whose last entry is the horizon T. Boundary-mask
/// nodes carry exactly 0 at every slice before the terminal one; values are
/// raw (no log floor applied here).
struct SpaceTimeField {
    std::vector<double> times;
    std::vector<Vec> slices;  // per slice: num_nodes values

    struct Meta {
        std::uint64_t seed = 0;
        double dt = 0.0;
        int n_paths = 0;
        int truncation = 0;
        std::string solver;
    } meta;

    int num_slices() const { return static_cast<int>(times.size()); }

    /// Enforces the probability-field contract: values within [-1e-6, 1+1e-6]
    /// (then clamped to [0,1]), exact zeros on boundary-mask nodes for t < T.
    void enforce_probability_bounds(const Grid& grid);
};

/// Ascending time grid on [0, T]: `base_slices` uniform slices, plus
/// `terminal_refinement` extra slices geometrically halving the last gap
/// toward T. The refinement keeps the score's singular near-boundary drift
/// resolved right up to the horizon, where linear-in-time interpolation
/// against the terminal indicator slice would otherwise wash it out.
std::vector<double> graded_time_grid(double T, int base_slices, int terminal_refinement);

/// Samples h(t, x) over the given time slices (last entry = T). Terminal
/// slice is the indicator of the target (interior classification); boundary
/// nodes are zeroed on earlier slices.
SpaceTimeField field_from_function(const Grid& grid, const ProblemSpec& spec,
                                   std::vector<double> times,
                                   const std::function<double(double, const Vec&)>& h);
SpaceTimeField field_from_function(const Grid& grid, const ProblemSpec& spec, int n_time_slices,
                                   const std::function<double(double, const Vec&)>& h);

/// Terminal indicator used for field terminal slices and path terminal-hit
/// checks: strict interior membership of the effective target (the
/// invariance set itself when no target is given).
bool terminal_indicator(const ProblemSpec& spec, const Vec& x);

/// CSV export: header `t,x1,...,xn,value`, one row per space-time node,
/// time-major then node index. A `# schema_version` comment leads the file.
void write_field_csv(const SpaceTimeField& field, const Grid& grid, const std::string& path);

/// Sidecar metadata document (grid geometry, seed, dt, n_paths, truncation).
void write_field_meta(const SpaceTimeField& field, const Grid& grid, const std::string& path);

/// Reads back a field written by write_field_csv onto the same grid.
SpaceTimeField read_field_csv(const Grid& grid, const std::string& path);

}  // namespace invar
