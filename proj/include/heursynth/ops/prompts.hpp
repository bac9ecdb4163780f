#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "heursynth/common/json.hpp"
#include "heursynth/memory/memory.hpp"

namespace heursynth {

enum class TemplateId { Proposer, Improve, Debug, Critic, Reflection };

std::string_view template_name(TemplateId id);

/// Built-in bodies from templates/*.txt, embedded at build time.
std::string_view builtin_template(TemplateId id);

class TemplateSet {
 public:
  /// Built-in bodies.
  TemplateSet();
  /// Built-ins overridden by <dir>/<name>.txt where present.
  static TemplateSet from_directory(const std::filesystem::path& dir);

  const std::string& body(TemplateId id) const { return bodies_.at(id); }

 private:
  std::map<TemplateId, std::string> bodies_;
};

/// Single-pass substitution of {name} placeholders. Throws
/// Error(TemplateUnbound) when a placeholder has no binding. Substituted text
/// is never rescanned.
std::string render_template(std::string_view body, const std::map<std::string, std::string>& bindings);

inline constexpr std::string_view kNoGlobalMemory = "No past failures or constraints recorded yet.";
inline constexpr std::string_view kNoBranchMemory = "No earlier attempts in this branch.";
inline constexpr std::string_view kInitialDraftCode = "No previous implementation (Initial Draft)";
inline constexpr std::string_view kInitialDraftLogs = "No previous logs (Initial Draft)";

/// Past failures section: one block per entry, oldest first.
std::string render_global_memory(std::span<const GlobalMemoryEntry> entries);

/// Outcome label of a record relative to its parent.
std::string_view record_label(const Record& record, const Record* parent);

/// (depth, sketch, diagnostic, v, f) tuples with labels, in the given order.
/// Parents are looked up among `lookup` by record id.
std::string render_history(std::span<const Record* const> records, std::span<const Record* const> lookup);

inline constexpr std::size_t kLogExcerptBytes = 2048;
inline constexpr std::size_t kMaxInstancesShown = 5;

/// Execution summary: aggregate line, then up to five instances (failures
/// first) with status, first violation and a 2 KiB stderr excerpt.
std::string render_execution_output(std::span<const ExecutionOutcome> outcomes);

struct ParsedSolver {
  std::string sketch;
  std::string code;
};

/// Sketch (text before the first fence) and the first fenced block's
/// interior. Returns nullopt and sets `why` on failure.
std::optional<ParsedSolver> parse_solver_reply(std::string_view text, std::string* why = nullptr);

/// Name of a forbidden solver library imported by `code`, if any.
std::optional<std::string> forbidden_import(std::string_view code);

/// First balanced {...} that parses as a JSON object.
std::optional<Json> extract_json_object(std::string_view text);

/// 64-bit FNV-1a as 16 hex digits.
std::string digest(std::string_view text);

}  // namespace heursynth
