#pragma once

#include <vector>

#include "heursynth/problem/types.hpp"

namespace heursynth {

/// Separation pressure: (P / R) * (sep90 / mean window width). sep90 is the
/// nearest-rank 90th percentile of the off-diagonal separation entries.
/// Throws Error(DegenerateWindows) when the mean window width is zero.
double difficulty_aircraft(const AircraftLandingInstance& instance);

/// Nearest-rank percentile (p in (0, 100]) of an unsorted sample.
double nearest_rank_percentile(std::vector<double> values, double p);

/// Balanced peak load ratio: min over schedule selections of max_d L_d / C_d.
/// Exact enumeration when the number of selections is at most 1e6, otherwise
/// greedy (customers by descending demand, each to the schedule that minimizes
/// the current peak ratio). Throws Error(ZeroCapacityDay).
double difficulty_pvrp(const PvrpInstance& instance);

inline constexpr double kMaxExactPvrpSelections = 1e6;

}  // namespace heursynth
