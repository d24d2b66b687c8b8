#pragma once

#include "invar/certify/range_test.hpp"
#include "invar/certify/score.hpp"
#include "invar/problem/problem_spec.hpp"

#include <string>
#include <vector>

namespace invar {

inline constexpr double kCertifyTolDefault = 1e-6;

enum class Verdict { Certified, Falsified };

/// Outcome of the pointwise solvability sweep of G u = s. Certification is
/// grid-resolution-relative: the verdict covers the checked nodes, with the
/// constant-full-row-rank flag recorded when the stronger structural
/// condition held at every node.
struct CertificationReport {
    Verdict verdict = Verdict::Falsified;
    double tolerance = 0.0;
    std::size_t nodes_checked = 0;
    std::size_t nodes_above_tol = 0;

    // Witness attains the max relative residual; lowest node index on ties.
    double witness_rel_residual = 0.0;
    double witness_abs_residual = 0.0;
    double witness_t = 0.0;
    Vec witness_x;

    double max_abs_residual = 0.0;
    double mean_rel_residual = 0.0;
    bool full_row_rank_everywhere = false;
};

/// Per-node controller data, populated whatever the verdict.
struct ControlLaw {
    struct Node {
        double t;
        Vec x;
        Vec u;            // minimum-norm particular solution
        double residual;  // ||G u - s||_2
        double rel_residual;
        Mat nullspace;    // m x (m - rank)
    };
    std::vector<Node> nodes;
};

/// Runs range_test at every interior node of every score slice. A node fails
/// when residual > tol * max(1, ||s||); Certified iff no node fails.
std::pair<CertificationReport, ControlLaw> certify_problem(const ProblemSpec& spec,
                                                           const ScoreField& score, double tol);

/// Report JSON (verdict, tolerance, witness, residual quantiles) and law CSV
/// (`t,x1..xn,residual,u1..um`).
void write_certification_json(const CertificationReport& report, const std::string& path);
void write_control_law_csv(const ControlLaw& law, int state_dim, const std::string& path);

}  // namespace invar
