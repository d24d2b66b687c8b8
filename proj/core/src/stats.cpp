#include "invar/sim/stats.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace invar {

SimStats exit_statistics(const PathEnsemble& ensemble, const Domain& domain,
                         const std::optional<Domain>& target) {
    if (ensemble.paths.empty()) throw std::invalid_argument("exit_statistics: empty ensemble");
    SimStats stats;
    stats.n_paths = static_cast<int>(ensemble.paths.size());
    stats.has_target = target.has_value();

    long exits = 0, hits = 0;
    double min_dist = std::numeric_limits<double>::infinity();
    bool any_retained = false;
    for (std::size_t p = 0; p < ensemble.paths.size(); ++p) {
        const auto& path = ensemble.paths[p];
        const bool exited = path.exit_step.has_value();
        exits += exited;
        if (!exited) {
            any_retained = true;
            for (const Vec& x : path.states)
                min_dist = std::min(min_dist, domain.boundary_distance(x));
            if (target && target->classify(path.final_state) == Region::Interior) ++hits;
        }
        stats.rows.push_back({p, exited, exited ? *path.exit_step : -1,
                              !exited && target &&
                                  target->classify(path.final_state) == Region::Interior});
    }
    stats.exit_fraction = static_cast<double>(exits) / stats.n_paths;
    stats.survived_fraction = 1.0 - stats.exit_fraction;
    stats.terminal_hit_fraction = target ? static_cast<double>(hits) / stats.n_paths : 0.0;
    stats.min_boundary_distance = any_retained ? min_dist : 0.0;
    return stats;
}

void write_stats_json(const SimStats& stats, const PathEnsemble& ensemble,
                      const std::string& path) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "sim_stats";
    doc["n_paths"] = stats.n_paths;
    doc["dt"] = ensemble.dt;
    doc["t_end"] = ensemble.t_end;
    doc["seed"] = ensemble.seed;
    doc["stride"] = ensemble.stride;
    doc["exit_fraction"] = stats.exit_fraction;
    doc["survived_fraction"] = stats.survived_fraction;
    if (stats.has_target) doc["terminal_hit_fraction"] = stats.terminal_hit_fraction;
    doc["min_boundary_distance"] = stats.min_boundary_distance;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : stats.rows) {
        nlohmann::ordered_json row;
        row["path_id"] = r.path_id;
        row["exited"] = r.exited;
        row["exit_step"] = r.exit_step;
        if (stats.has_target) row["terminal_in_target"] = r.terminal_in_target;
        rows.push_back(std::move(row));
    }
    doc["paths"] = std::move(rows);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << doc.dump(2) << '\n';
}

}  // namespace invar
