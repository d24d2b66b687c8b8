#pragma once

#include "invar/problem/domain.hpp"
#include "invar/problem/dynamics.hpp"

#include <optional>
#include <variant>

namespace invar {

/// Finite [0, T] or infinite [0, inf) planning interval.
class Horizon {
public:
    static Horizon finite(double T);
    static Horizon infinite();
    bool is_finite() const { return T_.has_value(); }
    double T() const;

private:
    std::optional<double> T_;
};

/// Full problem tuple: dynamics (f, G, sigma), invariance set, optional
/// terminal target (finite horizon only), horizon, and initial state.
/// Construction validates dimensions, strict interiority of x0, and
/// horizon/target compatibility; target containment is a sampled check done
/// by validate_spec.
struct ProblemSpec {
    DynamicsField dynamics;
    Domain domain;
    std::optional<Domain> target;
    Horizon horizon;
    Vec x0;

    ProblemSpec(DynamicsField dynamics_, Domain domain_, std::optional<Domain> target_,
                Horizon horizon_, Vec x0_);
};

}  // namespace invar
