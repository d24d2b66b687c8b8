#include "invar/certify/dyson.hpp"

#include <stdexcept>

namespace invar {

Vec dyson_drift(const Vec& x) {
    const Eigen::Index n = x.size();
    Vec u = Vec::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) continue;
            const double gap = x[i] - x[j];
            if (gap == 0.0) throw std::domain_error("dyson_drift: coincident coordinates");
            u[i] += 1.0 / gap;
        }
    }
    return u;
}

}  // namespace invar
