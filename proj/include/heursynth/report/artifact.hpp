#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "heursynth/common/json.hpp"
#include "heursynth/memory/memory.hpp"
#include "heursynth/ops/ledger.hpp"
#include "heursynth/problem/dataset.hpp"

namespace heursynth {

namespace artifact {
inline constexpr const char* kConfig = "config.json";
inline constexpr const char* kTrace = "trace.jsonl";
inline constexpr const char* kRecords = "records.jsonl";
inline constexpr const char* kGlobal = "global_memory.json";
inline constexpr const char* kLedger = "ledger.jsonl";
inline constexpr const char* kConvergence = "convergence.csv";
inline constexpr const char* kSolvers = "solvers";
inline constexpr const char* kFinal = "final.json";
inline constexpr const char* kTestDataset = "test_dataset.json";
inline constexpr const char* kTestOutcomes = "test_outcomes.jsonl";
inline constexpr const char* kLock = "run.lock";
}  // namespace artifact

/// Holds <dir>/run.lock (containing the owner pid) for its lifetime. A lock
/// whose owner is gone is taken over. Throws Error(Io) if a live process
/// holds it.
class RunLock {
 public:
  explicit RunLock(std::filesystem::path dir);
  ~RunLock();
  RunLock(const RunLock&) = delete;
  RunLock& operator=(const RunLock&) = delete;

  /// True when another live process holds the lock on `dir`.
  static bool held_by_other(const std::filesystem::path& dir);

 private:
  std::filesystem::path file_;
};

/// Incremental writer for one run directory. Every line is flushed as it is
/// written so an interrupted run leaves a readable prefix.
class RunWriter {
 public:
  explicit RunWriter(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path solvers_dir() const { return dir_ / artifact::kSolvers; }

  void write_config(const Json& config);
  void trace(const Json& event);
  void record(const Record& record);
  void ledger(const LedgerEntry& entry);
  void global(const std::vector<GlobalMemoryEntry>& entries);
  void test_dataset(const Dataset& test);
  void test_outcome(const ExecutionOutcome& outcome);
  void convergence(const std::string& csv);
  void final(const Json& summary);

 private:
  void append(std::ofstream& out, const Json& line);

  std::filesystem::path dir_;
  RunLock lock_;
  std::ofstream trace_, records_, ledger_, test_outcomes_;
};

/// Everything readable back from a run directory.
struct LoadedRun {
  std::filesystem::path dir;
  Json config;
  DomainId domain = DomainId::AircraftLanding;
  std::vector<Json> trace;
  std::vector<Record> records;  // creation order
  std::vector<GlobalMemoryEntry> global;
  std::vector<LedgerEntry> ledger;
  ArtifactStore store;
  std::optional<Json> final;
  std::optional<Dataset> test;
  std::vector<ExecutionOutcome> test_outcomes;

  bool complete() const { return final.has_value(); }
};

/// Throws Error(CorruptArtifact). A truncated last line of a .jsonl file (no
/// trailing newline) is ignored as an interrupted write.
LoadedRun load_run(const std::filesystem::path& dir);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace heursynth
