#pragma once

#include "invar/pde/generator.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace invar {

/// Principal Dirichlet eigenpair of (-L_h): smallest-real-part eigenvalue
/// with its positive eigenfunction on interior nodes, sup-normalized to 1.
struct EigenPair {
    double lambda0 = 0.0;
    Vec psi0;                 // interior-node values, min > 0, max = 1
    double residual = 0.0;    // ||(-L_h) psi0 - lambda0 psi0||_inf / ||psi0||_inf
    int iterations = 0;
};

/// Inverse power iteration on A = -L_h: one sparse LU factorization, then
/// v <- normalize(A^{-1} v) from an all-ones start with small seeded positive
/// jitter. The eigenvalue estimate is the quotient <v, A v> / <v, v>;
/// converged when successive estimates differ by < tol and the residual is
/// below 10 tol. The output is sign-fixed so its max-magnitude entry is
/// positive and then required positive everywhere (a negative node means the
/// converged mode is not the principal one).
///
/// Throws on singular factorization, non-convergence, or positivity failure.
EigenPair principal_eigenpair(const GeneratorMatrix& gen, double tol, int max_iter,
                              std::uint64_t seed);

/// CSV (`x1,...,xn,psi0`, interior nodes in row order) plus JSON metadata
/// (lambda0, residual, iterations, grid, seed).
void write_eigenpair_csv(const EigenPair& pair, const Grid& grid, const std::string& path);
void write_eigenpair_meta(const EigenPair& pair, const Grid& grid, std::uint64_t seed,
                          const std::string& solver, const std::string& path);
EigenPair read_eigenpair_csv(const Grid& grid, const std::string& csv_path,
                             const std::string& meta_path);

}  // namespace invar
