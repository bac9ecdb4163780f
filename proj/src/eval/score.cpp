#include "heursynth/eval/score.hpp"

#include <algorithm>
#include <cmath>

#include "heursynth/common/error.hpp"

namespace heursynth {

InstanceScore normalize_score(const RawOutcome& outcome, double reference_objective) {
  if (!outcome.feasible || !outcome.objective) return {0, 0.0};
  double h = std::abs(*outcome.objective);
  double ref = std::abs(reference_objective);
  double hi = std::max(h, ref);
  if (hi == 0.0) return {1, 1.0};
  return {1, std::min(h, ref) / hi};
}

DatasetMetrics dataset_metrics(std::span<const InstanceScore> scores) {
  if (scores.empty()) throw Error(ErrorKind::EmptyList, "dataset metrics need at least one score");
  DatasetMetrics m;
  m.per_instance.assign(scores.begin(), scores.end());
  double valid = 0.0, score = 0.0;
  for (const InstanceScore& s : scores) {
    valid += s.valid;
    score += s.score;
  }
  m.mean_valid = valid / static_cast<double>(scores.size());
  m.mean_score = score / static_cast<double>(scores.size());
  return m;
}

}  // namespace heursynth
