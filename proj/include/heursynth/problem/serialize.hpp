#pragma once

#include <optional>
#include <string>

#include "heursynth/common/json.hpp"
#include "heursynth/problem/types.hpp"

namespace heursynth {

/// Payload object with the snake_case field names of the dataset schema.
Json payload_to_json(const ProblemInstance& instance);
Json instance_to_json(const ProblemInstance& instance);

/// Parses one dataset entry. Throws Error(MalformedSchema) naming the instance
/// and field path, or Error(InvariantViolation) for structural invariant breaches.
ProblemInstance instance_from_json(DomainId domain, const Json& entry);

/// Checks the per-domain structural invariants; throws Error(InvariantViolation).
void validate_instance(const ProblemInstance& instance);

Json solution_to_json(const CandidateSolution& solution);

struct SolutionParse {
  std::optional<CandidateSolution> solution;
  std::string error;  // set when solution is empty
};

/// Structural parse of a solver's yielded payload. Never throws.
SolutionParse parse_solution(DomainId domain, const Json& payload);

}  // namespace heursynth
