#pragma once

#include "invar/pde/grid.hpp"
#include "invar/problem/dynamics.hpp"

#include <Eigen/SparseCore>

namespace invar {

/// Sparse restriction of the generator
///   L[phi] = <f, grad phi> + 1/2 <Sigma, Hess phi>
/// to interior nodes with homogeneous Dirichlet data: second-order central
/// differences throughout, mixed derivatives by the 4-point cross stencil,
/// stencil legs landing outside the interior contribute zero.
struct GeneratorMatrix {
    Eigen::SparseMatrix<double> L;         // num_interior x num_interior
    std::vector<std::size_t> interior_nodes;  // row/col -> grid flat index
};

GeneratorMatrix discretize_generator(const Grid& grid, const DynamicsField& dynamics, double t);

/// L_h applied to interior field values. Linear; length must match.
Vec apply_generator(const GeneratorMatrix& gen, const Vec& interior_values);

}  // namespace invar
