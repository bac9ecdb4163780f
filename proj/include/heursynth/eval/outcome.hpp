#pragma once

#include <optional>
#include <string>
#include <vector>

namespace heursynth {

/// Names the first violated constraint and the entities involved.
struct Violation {
  std::string constraint;             // e.g. "separation", "capacity", "resource(2)"
  std::vector<std::string> entities;  // e.g. {"plane 1", "plane 2"}
  std::string detail;

  std::string describe() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Evaluator verdict: feasible with an objective, or infeasible with a reason.
struct RawOutcome {
  bool feasible = false;
  std::optional<double> objective;
  std::optional<Violation> violation;

  static RawOutcome ok(double objective) { return {true, objective, std::nullopt}; }
  static RawOutcome fail(Violation v) { return {false, std::nullopt, std::move(v)}; }
  friend bool operator==(const RawOutcome&, const RawOutcome&) = default;
};

struct InstanceScore {
  int valid = 0;
  double score = 0.0;
  friend bool operator==(const InstanceScore&, const InstanceScore&) = default;
};

struct DatasetMetrics {
  double mean_valid = 0.0;
  double mean_score = 0.0;
  std::vector<InstanceScore> per_instance;
  friend bool operator==(const DatasetMetrics&, const DatasetMetrics&) = default;
};

}  // namespace heursynth
