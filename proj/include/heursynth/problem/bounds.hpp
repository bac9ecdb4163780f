#pragma once

#include <cstdint>

#include "heursynth/problem/types.hpp"

namespace heursynth {

/// Size limits of the small class. Instances within them are solved exactly by
/// the brute-force oracle.
namespace small_bounds {
inline constexpr int kMaxPlanes = 6;
inline constexpr int kMaxRunways = 2;
inline constexpr int kMaxCustomers = 5;
inline constexpr int kMaxPeriod = 3;
inline constexpr int kMaxBoxTypes = 4;
inline constexpr int kMaxBoxes = 3;
inline constexpr int kMaxContainerSide = 3;
inline constexpr int kMaxVertices = 8;
inline constexpr int kMaxResources = 2;
inline constexpr int kMaxTasks = 6;
inline constexpr int kMaxTerminals = 6;
/// Upper limit on candidate solutions the oracle enumerates per instance.
inline constexpr std::uint64_t kMaxOracleCandidates = 100'000;
}  // namespace small_bounds

/// Exact number of candidates the oracle enumerates for this instance
/// (saturates at UINT64_MAX).
std::uint64_t oracle_space_size(const ProblemInstance& instance);

/// True when the instance is within the small-class limits, including the
/// candidate-count cap and the integrality the oracle's discretization needs.
bool within_small_bounds(const ProblemInstance& instance);

/// Number of ways to arrange k labelled items into an unordered set of
/// non-empty ordered lists (1, 1, 3, 13, 73, 501, 4051, ...).
std::uint64_t ordered_list_partitions(int k);

/// Grid resolution used for Steiner candidate points (per axis).
inline constexpr int kSteinerGrid = 4;

}  // namespace heursynth
