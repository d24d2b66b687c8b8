#pragma once

#include "invar/problem/problem_spec.hpp"

#include <string>

namespace invar {

/// Parses a problem document (JSON text). Unknown keys are rejected, field
/// order is irrelevant. Throws std::invalid_argument with a diagnostic on
/// malformed input. See README for the schema.
ProblemSpec problem_spec_from_json(const std::string& json_text);

/// Serializes a spec built from registry dynamics back to its document form.
std::string problem_spec_to_json(const ProblemSpec& spec);

}  // namespace invar
