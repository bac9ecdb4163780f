#pragma once

#include <span>

#include "heursynth/eval/outcome.hpp"

namespace heursynth {

/// Symmetric min/max normalization against the best-known objective. Zero for
/// infeasible outcomes; 1 when both magnitudes are zero.
InstanceScore normalize_score(const RawOutcome& outcome, double reference_objective);

/// Arithmetic means over a non-empty list; throws Error(EmptyList) otherwise.
DatasetMetrics dataset_metrics(std::span<const InstanceScore> scores);

}  // namespace heursynth
