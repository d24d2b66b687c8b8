#pragma once

#include "invar/eig/eigenpair.hpp"
#include "invar/problem/problem_spec.hpp"

#include <optional>
#include <vector>

namespace invar {

struct RefinementRow {
    double spacing = 0.0;
    double lambda0 = 0.0;
    double error = 0.0;   // |lambda0 - reference| when a reference is given
    double order = 0.0;   // log2(e_prev / e_this), 0 on the coarsest row
};

/// Eigenvalue-vs-resolution table for a spec, with the observed convergence
/// order against an analytic reference when available. Resolutions should
/// halve between rows for the order estimate to be meaningful.
std::vector<RefinementRow> refinement_study(const ProblemSpec& spec,
                                            const std::vector<double>& spacings,
                                            std::optional<double> reference_lambda0,
                                            double tol, int max_iter, std::uint64_t seed);

}  // namespace invar
