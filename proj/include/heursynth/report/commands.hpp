#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "heursynth/exec/executor.hpp"
#include "heursynth/ops/operators.hpp"
#include "heursynth/problem/generate.hpp"
#include "heursynth/search/search.hpp"

namespace heursynth {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitPartial = 3;

/// The JSON config file: {search, roles, sandbox, rates}.
struct RunConfig {
  SearchConfig search;
  Json roles = Json::object();
  /// "subprocess" or "inprocess" (the scripted fake worker).
  std::string backend = "subprocess";
  std::vector<std::string> worker_command{"python3", "-m", "heursynth_worker"};
  SandboxConfig sandbox;
  std::map<std::string, Rates> rates;
  /// Directory that relative paths inside the config resolve against.
  std::filesystem::path base_dir;
};

/// Throws Error(InvalidConfig).
RunConfig parse_run_config(const Json& doc, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& file);
Json run_config_to_json(const RunConfig& config);

/// Roles section: "generator" and "reviewer" client specs, each optionally
/// overridden per role ("propose", "repair", "improve", "critic", "reflect").
/// A client spec is {"provider": "openai"|"scripted", "model", ...}.
OperatorRoleMap build_roles(const Json& roles, const std::filesystem::path& base_dir = {});
/// True when every client spec uses the scripted provider.
bool all_scripted(const Json& roles);

std::unique_ptr<WorkerBackend> build_backend(const RunConfig& config);

struct SynthesizeOptions {
  std::filesystem::path config;
  std::filesystem::path dev;
  std::filesystem::path test;
  std::filesystem::path out;
  std::optional<DomainId> domain;
  std::optional<int> budget;
  std::optional<int> depth_cap;
  std::optional<double> timeout;
  std::optional<std::uint64_t> seed;
  bool no_global = false;
  bool no_branch_local = false;
  bool no_failed_nodes = false;
  bool flat_memory = false;
  std::optional<std::filesystem::path> templates;
  std::string run_id;
};

int cmd_synthesize(const SynthesizeOptions& options, std::ostream& out, std::ostream& err);
int cmd_report(const std::filesystem::path& artifact_dir, const std::optional<std::filesystem::path>& out_dir,
               std::ostream& out, std::ostream& err);
int cmd_grade(DomainId domain, const std::filesystem::path& instance, const std::filesystem::path& solution,
              std::ostream& out, std::ostream& err);

struct GenerateOptions {
  DomainId domain = DomainId::AircraftLanding;
  SizeClass size = SizeClass::Small;
  int count = 10;
  std::uint64_t seed = 0;
  Split split = Split::Dev;
  std::filesystem::path out;
};

/// Small instances get the oracle's value as reference, larger ones the
/// generator witness objective.
Dataset generate_dataset(const GenerateOptions& options);
int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err);

int cmd_stability(const SynthesizeOptions& options, int runs, std::ostream& out, std::ostream& err);

}  // namespace heursynth
