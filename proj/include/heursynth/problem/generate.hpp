#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "heursynth/problem/types.hpp"

namespace heursynth {

enum class SizeClass { Small, Medium, Large };

std::string_view size_class_name(SizeClass size);
std::optional<SizeClass> parse_size_class(std::string_view name);

struct GeneratedInstance {
  ProblemInstance instance;
  /// A feasible solution the instance was built around.
  CandidateSolution witness;
};

/// Deterministic in (domain, size, seed). Small instances stay within
/// small_bounds so the oracle can solve them exactly.
GeneratedInstance generate_with_witness(DomainId domain, SizeClass size, std::uint64_t seed);

/// Same instance as generate_with_witness, witness dropped; no reference attached.
ProblemInstance generate_instance(DomainId domain, SizeClass size, std::uint64_t seed);

/// Natural-language task description handed to the proposer, including the
/// solve() keyword arguments and the expected yielded payload.
std::string_view problem_description(DomainId domain);

}  // namespace heursynth
