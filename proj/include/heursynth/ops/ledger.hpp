#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string_view>
#include <string>
#include <vector>

#include "heursynth/common/json.hpp"

namespace heursynth {

enum class Role { Propose, Repair, Improve, Critic, Reflect };

std::string_view role_name(Role role);
std::optional<Role> parse_role(std::string_view name);
inline constexpr Role kAllRoles[] = {Role::Propose, Role::Repair, Role::Improve, Role::Critic, Role::Reflect};

/// USD per million tokens.
struct Rates {
  double input_per_million = 0.0;
  double output_per_million = 0.0;
};

struct LedgerEntry {
  std::string role;
  std::string model;
  long long input_tokens = 0;
  long long output_tokens = 0;
  /// Token counts came from a whitespace split rather than provider usage.
  bool approximate = false;
  double wall_time = 0.0;
  double cost = 0.0;
  /// "ok", "parse-failure" or "client-error".
  std::string outcome = "ok";
  friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

Json ledger_entry_to_json(const LedgerEntry& e);
LedgerEntry ledger_entry_from_json(const Json& j);

struct LedgerTotals {
  long long input_tokens = 0;
  long long output_tokens = 0;
  double cost = 0.0;
  int calls = 0;
};

/// Append-only; appends may come from several threads.
class TokenLedger {
 public:
  void set_rates(std::map<std::string, Rates> per_model) { rates_ = std::move(per_model); }
  /// Fills in cost from the model's rates and appends. Returns the stored entry.
  LedgerEntry record(LedgerEntry entry);
  std::vector<LedgerEntry> entries() const;
  LedgerTotals totals() const;
  std::map<std::string, LedgerTotals> totals_by_role() const;

  /// Receives every appended entry (used for incremental persistence).
  std::function<void(const LedgerEntry&)> on_append;

 private:
  mutable std::mutex mu_;
  std::map<std::string, Rates> rates_;
  std::vector<LedgerEntry> entries_;
};

LedgerTotals sum_entries(const std::vector<LedgerEntry>& entries);

}  // namespace heursynth
