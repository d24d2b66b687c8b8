#pragma once

#include "invar/problem/problem_spec.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace invar {

enum class CheckStatus { Pass, Warn, Fail };

struct ValidationCheck {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
    Vec witness;       // worst sampled point, empty when not applicable
    double value = 0;  // worst sampled quantity (e.g. min eigenvalue)
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool any_fail() const;
    bool any_warn() const;
};

/// Desk-scale validation of the standing assumptions.
///
/// Structural domain checks are exact; uniform ellipticity of Sigma and
/// target containment are sampled (`sample_count` points drawn from the
/// seeded stream over the bounding box). Sub-tolerance ellipticity is a WARN,
/// not a FAIL: degenerate noise channels are legitimate problem data and the
/// downstream score construction handles them.
ValidationReport validate_spec(const ProblemSpec& spec, int sample_count, double tolerance,
                               std::uint64_t seed = 0);

}  // namespace invar
