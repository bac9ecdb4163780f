#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heursynth/common/json.hpp"
#include "heursynth/eval/outcome.hpp"
#include "heursynth/problem/types.hpp"

namespace heursynth {

enum class ExecStatus { Solved, Crashed, YieldedNothing, TimeoutNoYield };

std::string_view status_name(ExecStatus status);
std::optional<ExecStatus> parse_status(std::string_view name);

/// Result of running one solver on one instance, with its evaluation.
struct ExecutionOutcome {
  std::string instance_id;
  ExecStatus status = ExecStatus::YieldedNothing;
  std::optional<CandidateSolution> last_solution;
  int yield_count = 0;
  std::string stdout_log;
  std::string stderr_log;
  double wall_time = 0.0;
  /// Evaluator verdict on last_solution; a "no-solution" violation when absent.
  RawOutcome evaluation;
  InstanceScore score;

  bool clean() const { return status == ExecStatus::Solved && evaluation.feasible; }
  friend bool operator==(const ExecutionOutcome&, const ExecutionOutcome&) = default;
};

struct ExecutionReport {
  std::vector<ExecutionOutcome> outcomes;  // dataset order
  int v = 0;
  double f = 0.0;
  std::vector<InstanceScore> per_instance_scores;
  friend bool operator==(const ExecutionReport&, const ExecutionReport&) = default;
};

/// Recomputes v and f from the outcomes' scores.
ExecutionReport aggregate(std::vector<ExecutionOutcome> outcomes);

Json outcome_to_json(const ExecutionOutcome& outcome);
/// Needs the domain to re-parse last_solution. Throws Error(CorruptArtifact).
ExecutionOutcome outcome_from_json(DomainId domain, const Json& j);

Json violation_to_json(const std::optional<Violation>& v);

}  // namespace heursynth
