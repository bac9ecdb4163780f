#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "heursynth/memory/memory.hpp"
#include "heursynth/ops/client.hpp"
#include "heursynth/ops/ledger.hpp"
#include "heursynth/ops/prompts.hpp"

namespace heursynth {

/// Client per operator role. Several roles may share one client.
class OperatorRoleMap {
 public:
  OperatorRoleMap() = default;
  /// Generation roles (propose, repair, improve) share `generator`; critic
  /// and reflect share `reviewer`.
  static OperatorRoleMap split(std::shared_ptr<ChatModelClient> generator, std::shared_ptr<ChatModelClient> reviewer);
  static OperatorRoleMap single(std::shared_ptr<ChatModelClient> client) { return split(client, client); }

  void bind(Role role, std::shared_ptr<ChatModelClient> client) { clients_[role] = std::move(client); }
  /// Throws Error(InvalidConfig) for an unbound role.
  ChatModelClient& client(Role role) const;
  bool complete() const;

 private:
  std::map<Role, std::shared_ptr<ChatModelClient>> clients_;
};

struct LlmCall {
  Role role;
  std::string model;
  std::string prompt;
  std::string prompt_digest;
  int attempt = 0;
  std::string outcome;
};

/// Everything an operator needs besides its inputs.
struct OperatorContext {
  const OperatorRoleMap* roles = nullptr;
  TokenLedger* ledger = nullptr;
  const TemplateSet* templates = nullptr;
  /// Re-asks after a reply that cannot be parsed.
  int max_reasks = 2;
  /// Seconds; used only for ledger wall times. Defaults to a steady clock.
  std::function<double()> clock;
  /// Observes each call (trace).
  std::function<void(const LlmCall&)> on_call;
};

struct GeneratedSolver {
  std::string sketch;
  std::string code;
};

struct Diagnostic {
  bool is_bug = false;
  std::string summary;
  bool fallback = false;
};

/// Solver code and execution outcomes of one record, for the critic.
struct CriticSide {
  const std::string* code = nullptr;
  std::span<const ExecutionOutcome> outcomes;
};

/// Branch opener. `memory_section` is the rendered past-failures text
/// (render_global_memory, or the shared history under flat memory).
GeneratedSolver propose(const OperatorContext& ctx, const std::string& task, const std::string& memory_section);

/// Validity recovery from an invalid parent.
GeneratedSolver repair(const OperatorContext& ctx, const std::string& task, const Record& parent,
                       const std::string& parent_code, const std::string& history_section);

/// One focused change to a valid parent.
GeneratedSolver improve(const OperatorContext& ctx, const std::string& task, const Record& parent,
                        const std::string& parent_code, const std::string& history_section);

/// Parent/child comparison. Falls back to a diagnostic built from the
/// outcomes when the reply cannot be parsed.
Diagnostic critic(const OperatorContext& ctx, const std::string& task, const CriticSide& current,
                  const std::optional<CriticSide>& parent);

/// Deterministic diagnostic from outcomes alone.
Diagnostic fallback_diagnostic(std::span<const ExecutionOutcome> current);

/// Branch summary. Falls back to an entry built from the records when the
/// reply cannot be parsed.
GlobalMemoryEntry reflect(const OperatorContext& ctx, int branch_id, const std::string& history_section,
                          std::span<const Record* const> records);

GlobalMemoryEntry fallback_reflection(int branch_id, std::span<const Record* const> records);

}  // namespace heursynth
