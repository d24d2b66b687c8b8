#pragma once

#include "invar/problem/domain.hpp"

namespace invar {

/// Pairwise repulsion u_i = sum_{j != i} 1 / (x_i - x_j): the exact gradient
/// of log |Vandermonde|, the time-invariant feedback keeping ordered
/// coordinates from colliding. Throws std::domain_error on coincident
/// coordinates.
Vec dyson_drift(const Vec& x);

}  // namespace invar
