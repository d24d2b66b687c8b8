#pragma once

#include "invar/certify/score.hpp"
#include "invar/sim/euler_maruyama.hpp"
#include "invar/problem/problem_spec.hpp"

#include <optional>
#include <string>

namespace invar {

/// Seeded closed-loop sample paths with per-path exit bookkeeping. Exit
/// detection runs on every step; storage is strided only above 100 paths
/// (exit and final steps are always retained).
struct PathEnsemble {
    struct Path {
        std::vector<long> steps;           // stored step indices
        std::vector<Vec> states;           // states at the stored steps
        std::optional<long> exit_step;     // first step classified off-interior
        Vec final_state;                   // state at exit or at the horizon
        bool terminal_in_target = false;   // finite horizon with target only
    };
    std::vector<Path> paths;
    double dt = 0.0;
    double t_end = 0.0;
    std::uint64_t seed = 0;
    int stride = 1;
};

/// Closed loop under the conditioned drift f + s(t, x), the score sampled
/// from the gridded field (multilinear in space, linear in time). Paths run
/// on [0, T]; absorption truncates at the offending step.
PathEnsemble simulate_conditioned_finite(const ProblemSpec& spec, const ScoreField& score,
                                         int n_paths, double dt, std::uint64_t seed,
                                         int stride = 0, int threads = 0);

/// Infinite-horizon analogue with a time-invariant score (gridded or
/// analytic callable), run to t_end.
PathEnsemble simulate_conditioned_infinite(const ProblemSpec& spec, const ScoreField& score,
                                           int n_paths, double dt, double t_end,
                                           std::uint64_t seed, int stride = 0, int threads = 0);
PathEnsemble simulate_conditioned_infinite(const ProblemSpec& spec, const DriftFn& score_fn,
                                           int n_paths, double dt, double t_end,
                                           std::uint64_t seed, int stride = 0, int threads = 0);

/// Interacting ordered particles: drift = pairwise repulsion, unit noise per
/// coordinate. An ordering violation at any step is recorded as an exit from
/// the chamber.
PathEnsemble simulate_dyson(const Vec& x0, double dt, double t_end, int n_runs,
                            std::uint64_t seed, int stride = 0, int threads = 0);

/// Uncontrolled prior over the same horizon (the contrast baseline).
PathEnsemble simulate_prior(const ProblemSpec& spec, int n_paths, double dt, double t_end,
                            std::uint64_t seed, int stride = 0, int threads = 0);

struct DtRefinementRow {
    double dt;
    double exit_fraction;
    double std_error;
};

/// Exit fraction per step size for the finite-horizon closed loop; used to
/// check the fraction does not grow as dt shrinks.
std::vector<DtRefinementRow> dt_refinement_check(const ProblemSpec& spec, const ScoreField& score,
                                                 const std::vector<double>& dts, int n_paths,
                                                 std::uint64_t seed, int threads = 0);

/// Paths CSV: `path_id,step,t,x1..xn` over the stored steps.
void write_paths_csv(const PathEnsemble& ensemble, int state_dim, const std::string& path);

}  // namespace invar
