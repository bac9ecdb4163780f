#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "heursynth/common/json.hpp"
#include "heursynth/problem/types.hpp"

namespace heursynth {

enum class Split { Dev, Test };

std::string_view split_name(Split split);

/// Ordered, non-empty collection of instances of one domain. Order is the
/// per-instance reporting order everywhere downstream.
struct Dataset {
  DomainId domain = DomainId::AircraftLanding;
  Split split = Split::Dev;
  std::vector<ProblemInstance> instances;

  std::size_t size() const { return instances.size(); }
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Validates the whole document; the first malformed instance rejects it.
Dataset parse_dataset(const Json& doc, Split split);
Dataset load_dataset(const std::filesystem::path& path, Split split);

Json dataset_to_json(const Dataset& dataset);
/// Canonical text form: 2-space indented JSON plus trailing newline.
std::string serialize_dataset(const Dataset& dataset);
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

/// Sets reference_objective; idempotent for the same value, throws
/// Error(ConflictingReference) for a different one.
ProblemInstance attach_reference_objective(ProblemInstance instance, double oracle_value);

}  // namespace heursynth
