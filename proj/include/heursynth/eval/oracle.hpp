#pragma once

#include <functional>

#include "heursynth/eval/outcome.hpp"
#include "heursynth/problem/types.hpp"

namespace heursynth {

/// The oracle's own verdict on one enumerated candidate.
struct OracleVerdict {
  bool feasible = false;
  double objective = 0.0;
};

using OracleVisitor = std::function<void(const CandidateSolution&, const OracleVerdict&)>;

/// Walks the oracle's search space for a small-class instance, judging each
/// candidate with constraint logic that is independent of the evaluators
/// (voxel grids, Kruskal MSTs, dense adjacency tables). The space also holds a
/// handful of deliberately broken probes. Throws Error(TooLarge) outside the
/// small class.
void enumerate_oracle_candidates(const ProblemInstance& instance, const OracleVisitor& visit);

/// Best feasible objective over the oracle's search space (minimum or maximum
/// per domain). For Steiner the space is a finite set of candidate points, so
/// the result is a best-known value rather than a proven optimum.
RawOutcome oracle_solve(const ProblemInstance& instance);

}  // namespace heursynth
