#include "heursynth/ops/ledger.hpp"

#include "heursynth/common/error.hpp"

namespace heursynth {

std::string_view role_name(Role role) {
  switch (role) {
    case Role::Propose: return "propose";
    case Role::Repair: return "repair";
    case Role::Improve: return "improve";
    case Role::Critic: return "critic";
    case Role::Reflect: return "reflect";
  }
  return "unknown";
}

std::optional<Role> parse_role(std::string_view name) {
  for (Role r : kAllRoles) {
    if (role_name(r) == name) return r;
  }
  return std::nullopt;
}

Json ledger_entry_to_json(const LedgerEntry& e) {
  return Json{{"role", e.role},
              {"model", e.model},
              {"input_tokens", e.input_tokens},
              {"output_tokens", e.output_tokens},
              {"approximate", e.approximate},
              {"wall_time", e.wall_time},
              {"cost", e.cost},
              {"outcome", e.outcome}};
}

LedgerEntry ledger_entry_from_json(const Json& j) {
  try {
    LedgerEntry e;
    e.role = j.at("role").get<std::string>();
    e.model = j.at("model").get<std::string>();
    e.input_tokens = j.at("input_tokens").get<long long>();
    e.output_tokens = j.at("output_tokens").get<long long>();
    e.approximate = j.at("approximate").get<bool>();
    e.wall_time = j.at("wall_time").get<double>();
    e.cost = j.at("cost").get<double>();
    e.outcome = j.at("outcome").get<std::string>();
    return e;
  } catch (const Json::exception& ex) {
    throw Error(ErrorKind::CorruptArtifact, std::string("ledger entry: ") + ex.what());
  }
}

LedgerEntry TokenLedger::record(LedgerEntry entry) {
  std::lock_guard lock(mu_);
  auto it = rates_.find(entry.model);
  Rates r = it == rates_.end() ? Rates{} : it->second;
  entry.cost = (static_cast<double>(entry.input_tokens) * r.input_per_million +
                static_cast<double>(entry.output_tokens) * r.output_per_million) /
               1e6;
  entries_.push_back(entry);
  if (on_append) on_append(entry);
  return entry;
}

std::vector<LedgerEntry> TokenLedger::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

LedgerTotals sum_entries(const std::vector<LedgerEntry>& entries) {
  LedgerTotals t;
  for (const LedgerEntry& e : entries) {
    t.input_tokens += e.input_tokens;
    t.output_tokens += e.output_tokens;
    t.cost += e.cost;
    ++t.calls;
  }
  return t;
}

LedgerTotals TokenLedger::totals() const { return sum_entries(entries()); }

std::map<std::string, LedgerTotals> TokenLedger::totals_by_role() const {
  std::map<std::string, std::vector<LedgerEntry>> grouped;
  for (const LedgerEntry& e : entries()) grouped[e.role].push_back(e);
  std::map<std::string, LedgerTotals> out;
  for (const auto& [role, list] : grouped) out[role] = sum_entries(list);
  return out;
}

}  // namespace heursynth
