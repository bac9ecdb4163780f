#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heursynth/common/json.hpp"
#include "heursynth/common/rng.hpp"
#include "heursynth/exec/outcome.hpp"

namespace heursynth {

/// One search node.
struct Record {
  std::string record_id;
  int branch_id = 0;
  int depth = 1;
  std::string pi;   // algorithm sketch
  std::string rho;  // critic diagnostic
  bool is_bug = false;
  int v = 0;
  double f = 0.0;
  std::vector<ExecutionOutcome> E;
  std::optional<std::string> parent_record_id;
  std::string solver_ref;
  /// Position in run-wide creation order, used for tie-breaks.
  int created = 0;

  friend bool operator==(const Record&, const Record&) = default;
};

/// Throws Error(InvariantViolation) when v, f or the depth/parent pairing
/// disagree with E.
void check_record(const Record& record);

Json record_to_json(const Record& record);
Record record_from_json(DomainId domain, const Json& j);

class BranchLocalMemory {
 public:
  explicit BranchLocalMemory(int branch_id) : branch_id_(branch_id) {}

  /// Throws Error(BranchMismatch) or Error(DuplicateId); checks the record.
  void append(Record record);

  int branch_id() const { return branch_id_; }
  const std::vector<Record>& records() const { return records_; }
  bool empty() const { return records_.empty(); }
  bool has_valid() const;

 private:
  int branch_id_;
  std::vector<Record> records_;
};

struct GlobalMemoryEntry {
  int branch_id = 0;
  std::string algorithmic_design;
  std::string failure_modes;
  std::string avoidance_directives;
  std::size_t token_estimate = 0;
  friend bool operator==(const GlobalMemoryEntry&, const GlobalMemoryEntry&) = default;
};

/// Whitespace-separated token count.
std::size_t whitespace_tokens(std::string_view text);

GlobalMemoryEntry make_global_entry(int branch_id, std::string design, std::string failures,
                                    std::string directives);

Json global_entry_to_json(const GlobalMemoryEntry& entry);
GlobalMemoryEntry global_entry_from_json(const Json& j);

/// Throws Error(DuplicateBranch) if the branch already has an entry.
void add_global_entry(std::vector<GlobalMemoryEntry>& global, GlobalMemoryEntry entry);

/// Write-once map from solver_ref to source text. With a directory set, each
/// source is also written to <dir>/<ref>.
class ArtifactStore {
 public:
  ArtifactStore() = default;
  explicit ArtifactStore(std::filesystem::path dir);

  /// Throws Error(DuplicateId) if the key exists.
  void put(const std::string& ref, const std::string& source);
  /// Throws Error(MissingReference).
  const std::string& get(const std::string& ref) const;
  bool contains(const std::string& ref) const { return sources_.count(ref) != 0; }
  const std::map<std::string, std::string>& sources() const { return sources_; }

  /// Loads every file of a solvers directory.
  static ArtifactStore load(const std::filesystem::path& dir);

 private:
  std::optional<std::filesystem::path> dir_;
  std::map<std::string, std::string> sources_;
};

/// Samples a parent with probability f / sum(f), uniform when all f are 0.
/// Throws Error(EmptyMemory) or Error(HasValidRecord).
const Record& select_repair_parent(const BranchLocalMemory& memory, Rng& rng);

/// Highest-f valid record, earliest on ties. Throws Error(NoValidRecord).
const Record& select_improve_parent(const BranchLocalMemory& memory);

/// Best valid record over all branches, else best overall; ties go to the
/// earliest created. Throws Error(EmptySearch).
const Record& select_final_record(std::span<const Record* const> records);
std::pair<Record, std::string> final_selection(std::span<const BranchLocalMemory> memories,
                                               const ArtifactStore& store);

}  // namespace heursynth
