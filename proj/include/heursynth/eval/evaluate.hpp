#pragma once

#include "heursynth/common/json.hpp"
#include "heursynth/eval/outcome.hpp"
#include "heursynth/problem/types.hpp"

namespace heursynth {

// Every evaluator reports the first violated constraint in a fixed order:
// structure (malformed) -> per-entity bounds -> pairwise -> aggregate. Pure
// functions of their arguments.

/// Constraint names: malformed, time-window, runway, separation.
RawOutcome evaluate_aircraft(const AircraftLandingInstance& in, const AircraftSolution& sol);

/// Constraint names: malformed, schedule, customer-id, depot, repeat, coverage,
/// capacity, vehicles.
RawOutcome evaluate_pvrp(const PvrpInstance& in, const PvrpSolution& sol);

/// Constraint names: box-type, container-id, orientation, bounds, overlap, count.
RawOutcome evaluate_container(const ContainerInstance& in, const ContainerSolution& sol);

/// As evaluate_container plus unsupported and load-bearing.
RawOutcome evaluate_container_weight(const ContainerInstance& in, const ContainerWeightSolution& sol);

/// Constraint names: vertex, endpoints, missing-arc, resource(k) with k 1-based.
/// The objective is recomputed from arc costs; a solver-reported total is ignored.
RawOutcome evaluate_rcsp(const RcspInstance& in, const RcspSolution& sol);

/// Constraint names: empty-crew, unknown-task, overlap, missing-arc, duty-time,
/// coverage, crew-limit.
RawOutcome evaluate_crew(const CrewInstance& in, const CrewSolution& sol);

/// Objective 1 - mst(terminals + points) / mst(terminals); mst-longer when the
/// candidate tree exceeds the terminal tree by more than 1e-9.
RawOutcome evaluate_steiner(const SteinerInstance& in, const SteinerSolution& sol);

RawOutcome evaluate(const ProblemInstance& instance, const CandidateSolution& solution);

/// Parses then evaluates; parse errors come back as a malformed violation.
RawOutcome evaluate_json(const ProblemInstance& instance, const Json& solution);

inline constexpr double kSteinerTolerance = 1e-9;

}  // namespace heursynth
