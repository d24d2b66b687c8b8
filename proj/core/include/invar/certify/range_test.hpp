#pragma once

#include "invar/problem/domain.hpp"

namespace invar {

/// Singular values below this fraction of the largest are treated as zero;
/// the same cutoff feeds rank and nullspace extraction.
inline constexpr double kRankCutoff = 1e-10;

struct RangeTestResult {
    bool in_range = false;
    double residual = 0.0;  // ||G u - s||_2 for the minimum-norm u
    Vec u;                  // minimum-Euclidean-norm least-squares solution
    int rank = 0;
    Mat nullspace;          // m x (m - rank) orthonormal basis of N(G)
};

/// Pointwise solvability of G u = s by a rank-revealing SVD. in_range holds
/// iff residual <= tol * max(1, ||s||_2).
RangeTestResult range_test(const Mat& G, const Vec& s, double tol);

}  // namespace invar
