#include "invar/eig/refinement.hpp"

#include <cmath>
#include <stdexcept>

namespace invar {

std::vector<RefinementRow> refinement_study(const ProblemSpec& spec,
                                            const std::vector<double>& spacings,
                                            std::optional<double> reference_lambda0,
                                            double tol, int max_iter, std::uint64_t seed) {
    if (spacings.size() < 2) throw std::invalid_argument("refinement_study: need >= 2 resolutions");
    std::vector<RefinementRow> rows;
    rows.reserve(spacings.size());
    for (const double h : spacings) {
        const Grid grid = Grid::over_domain(spec.domain, h);
        const GeneratorMatrix gen = discretize_generator(grid, spec.dynamics, 0.0);
        const EigenPair pair = principal_eigenpair(gen, tol, max_iter, seed);
        RefinementRow row;
        row.spacing = h;
        row.lambda0 = pair.lambda0;
        if (reference_lambda0) {
            row.error = std::abs(pair.lambda0 - *reference_lambda0);
            if (!rows.empty() && rows.back().error > 0.0 && row.error > 0.0)
                row.order = std::log2(rows.back().error / row.error);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace invar
