#pragma once

#include "invar/sim/conditioned.hpp"

#include <string>

namespace invar {

/// Deterministic exit/terminal aggregates of an ensemble.
struct SimStats {
    int n_paths = 0;
    double exit_fraction = 0.0;
    double survived_fraction = 0.0;
    double terminal_hit_fraction = 0.0;  // finite horizon with target
    bool has_target = false;
    /// Min over retained (non-exited) paths of the stored-step boundary
    /// distance; 0 when every path exits.
    double min_boundary_distance = 0.0;

    struct PathRow {
        std::size_t path_id;
        bool exited;
        long exit_step;  // -1 when retained
        bool terminal_in_target;
    };
    std::vector<PathRow> rows;
};

SimStats exit_statistics(const PathEnsemble& ensemble, const Domain& domain,
                         const std::optional<Domain>& target);

void write_stats_json(const SimStats& stats, const PathEnsemble& ensemble,
                      const std::string& path);

}  // namespace invar
