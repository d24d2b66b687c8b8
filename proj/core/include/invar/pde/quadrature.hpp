#pragma once

#include <functional>

namespace invar {

/// Adaptive Simpson quadrature with an absolute error target.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 40);

}  // namespace invar
