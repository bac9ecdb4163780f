#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "heursynth/common/json.hpp"
#include "heursynth/exec/executor.hpp"
#include "heursynth/memory/memory.hpp"
#include "heursynth/ops/operators.hpp"
#include "heursynth/problem/dataset.hpp"

namespace heursynth {

struct AblationFlags {
  bool no_global = false;
  bool no_branch_local = false;
  bool no_failed_nodes = false;
  bool flat_memory = false;
  friend bool operator==(const AblationFlags&, const AblationFlags&) = default;
};

enum class StopRule { Stagnation, Never };

inline constexpr double kEpsilonImprove = 0.005;

struct SearchConfig {
  int budget = 16;
  int depth_cap = 5;
  double timeout = 10.0;
  double grace = kDefaultGrace;
  std::uint64_t rng_seed = 0;
  AblationFlags ablations;
  int improvement_window = 2;
  int parallelism = 0;
  StopRule stop_rule = StopRule::Stagnation;
  bool strict_crash_voids_yields = false;

  /// Throws Error(InvalidConfig).
  void validate() const;
  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

Json search_config_to_json(const SearchConfig& config);
/// Missing keys keep their defaults. Throws Error(InvalidConfig).
SearchConfig search_config_from_json(const Json& j);

/// False once a branch with a valid record has not raised its best valid f by
/// more than kEpsilonImprove over its last `window` records.
bool improvement_expected(const BranchLocalMemory& branch, int window);

struct SearchState {
  int budget_total = 0;
  int remaining_budget = 0;
  int executions = 0;
  int branch_counter = 0;
  int stranded_budget = 0;
  std::vector<GlobalMemoryEntry> global_memory;
  std::vector<BranchLocalMemory> branches;
  ArtifactStore store;
  TokenLedger ledger;
  std::vector<Json> trace;

  std::vector<const Record*> all_records() const;
};

struct Problem {
  DomainId domain = DomainId::AircraftLanding;
  std::string description;
  Dataset dev;
};

/// Collaborators of one run. Callbacks see each item as it is produced.
struct SearchEnv {
  const OperatorRoleMap* roles = nullptr;
  WorkerBackend* backend = nullptr;
  const TemplateSet* templates = nullptr;
  /// Ledger clock; empty means a steady clock.
  std::function<double()> llm_clock;
  std::function<void(const Json&)> on_trace;
  std::function<void(const Record&)> on_record;
  std::function<void(const GlobalMemoryEntry&)> on_global;
};

struct SearchResult {
  Record selected;
  std::string source;
};

/// Budgeted branch search. `state` is filled in place and keeps everything
/// produced so far when an operator or client error aborts the run. Throws
/// Error(EmptySearch) when the budget never allows a branch (B = 1).
SearchResult run_search(const Problem& problem, const SearchConfig& config, const SearchEnv& env, SearchState& state);

struct MetricStats {
  double mean = 0.0;
  double stdev = 0.0;
};

struct StabilitySummary {
  std::vector<DatasetMetrics> runs;
  MetricStats avg;
  MetricStats valid;
};

/// Population mean and standard deviation.
MetricStats population_stats(const std::vector<double>& values);

/// `run_count` searches with seeds rng_seed + i, each selected solver
/// evaluated once on `test`. `roles_for_run`, when set, supplies fresh
/// clients per run (scripted clients are single-use). Throws
/// Error(InvalidConfig) for run_count < 2.
StabilitySummary run_multi(const Problem& problem, const Dataset& test, const SearchConfig& config,
                           const SearchEnv& env, int run_count,
                           const std::function<OperatorRoleMap(int)>& roles_for_run = {});

}  // namespace heursynth
