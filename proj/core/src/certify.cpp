#include "invar/certify/certify.hpp"

#include "invar/support/num_format.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace invar {

std::pair<CertificationReport, ControlLaw> certify_problem(const ProblemSpec& spec,
                                                           const ScoreField& score, double tol) {
    const Grid& grid = score.grid();
    if (grid.dim() != spec.dynamics.state_dim)
        throw std::invalid_argument("certify_problem: score grid does not match spec");

    CertificationReport report;
    report.tolerance = tol;
    report.full_row_rank_everywhere = true;

    ControlLaw law;
    const int n_slices = score.time_invariant() ? 1 : static_cast<int>(score.times().size());
    law.nodes.reserve(static_cast<std::size_t>(n_slices) * grid.num_interior());

    double rel_sum = 0.0;
    for (int j = 0; j < n_slices; ++j) {
        const double t = score.times()[j];
        for (std::size_t node : grid.interior_nodes()) {
            const Vec x = grid.node_coord(node);
            const Vec s = score.at_node(j, node);
            const Mat G = spec.dynamics.input_matrix(t, x);
            const RangeTestResult rt = range_test(G, s, tol);

            const double rel = rt.residual / std::max(1.0, s.norm());
            rel_sum += rel;
            ++report.nodes_checked;
            if (rel > tol) ++report.nodes_above_tol;
            report.max_abs_residual = std::max(report.max_abs_residual, rt.residual);
            if (rt.rank < G.rows()) report.full_row_rank_everywhere = false;
            if (rel > report.witness_rel_residual) {
                report.witness_rel_residual = rel;
                report.witness_abs_residual = rt.residual;
                report.witness_t = t;
                report.witness_x = x;
            }
            law.nodes.push_back({t, x, rt.u, rt.residual, rel, rt.nullspace});
        }
    }
    report.mean_rel_residual = report.nodes_checked ? rel_sum / report.nodes_checked : 0.0;
    report.verdict = report.nodes_above_tol == 0 ? Verdict::Certified : Verdict::Falsified;
    if (report.witness_x.size() == 0) report.witness_x = Vec::Zero(grid.dim());
    return {report, law};
}

void write_certification_json(const CertificationReport& report, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "certification_report";
    doc["verdict"] = report.verdict == Verdict::Certified ? "certified" : "falsified";
    doc["tolerance"] = report.tolerance;
    doc["nodes_checked"] = report.nodes_checked;
    doc["nodes_above_tol"] = report.nodes_above_tol;
    doc["witness"]["rel_residual"] = report.witness_rel_residual;
    doc["witness"]["abs_residual"] = report.witness_abs_residual;
    doc["witness"]["t"] = report.witness_t;
    doc["witness"]["x"] = std::vector<double>(report.witness_x.data(),
                                              report.witness_x.data() + report.witness_x.size());
    doc["max_abs_residual"] = report.max_abs_residual;
    doc["mean_rel_residual"] = report.mean_rel_residual;
    doc["full_row_rank_everywhere"] = report.full_row_rank_everywhere;
    doc["note"] = "verdict is grid-resolution-relative: the range condition was checked at grid nodes";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << doc.dump(2) << '\n';
}

void write_control_law_csv(const ControlLaw& law, int state_dim, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "# schema_version 1\n";
    out << "t";
    for (int a = 0; a < state_dim; ++a) out << ",x" << (a + 1);
    const int m = law.nodes.empty() ? 0 : static_cast<int>(law.nodes.front().u.size());
    out << ",residual";
    for (int i = 0; i < m; ++i) out << ",u" << (i + 1);
    out << '\n';
    for (const auto& node : law.nodes) {
        out << format_double(node.t);
        for (int a = 0; a < state_dim; ++a) out << ',' << format_double(node.x[a]);
        out << ',' << format_double(node.residual);
        for (int i = 0; i < m; ++i) out << ',' << format_double(node.u[i]);
        out << '\n';
    }
}

}  // namespace invar
