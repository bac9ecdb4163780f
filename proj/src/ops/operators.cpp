#include "heursynth/ops/operators.hpp"

#include <algorithm>
#include <chrono>

#include "heursynth/common/error.hpp"

namespace heursynth {

OperatorRoleMap OperatorRoleMap::split(std::shared_ptr<ChatModelClient> generator,
                                       std::shared_ptr<ChatModelClient> reviewer) {
  OperatorRoleMap map;
  map.bind(Role::Propose, generator);
  map.bind(Role::Repair, generator);
  map.bind(Role::Improve, generator);
  map.bind(Role::Critic, reviewer);
  map.bind(Role::Reflect, reviewer);
  return map;
}

ChatModelClient& OperatorRoleMap::client(Role role) const {
  auto it = clients_.find(role);
  if (it == clients_.end() || !it->second) {
    throw Error(ErrorKind::InvalidConfig, "no client bound for role " + std::string(role_name(role)));
  }
  return *it->second;
}

bool OperatorRoleMap::complete() const {
  return std::all_of(std::begin(kAllRoles), std::end(kAllRoles), [&](Role r) {
    auto it = clients_.find(r);
    return it != clients_.end() && it->second;
  });
}

namespace {

double steady_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

const TemplateSet& templates_of(const OperatorContext& ctx) {
  static const TemplateSet builtin;
  return ctx.templates ? *ctx.templates : builtin;
}

// One operator call with re-asks. `accept` returns an empty string when the
// reply is usable, otherwise the reason it is not. Returns the accepted reply,
// or nullopt once the re-ask budget is spent.
template <class Accept>
std::optional<std::string> ask(const OperatorContext& ctx, Role role, const std::string& prompt, Accept accept) {
  if (!ctx.roles) throw Error(ErrorKind::InvalidConfig, "operator context has no role map");
  ChatModelClient& client = ctx.roles->client(role);
  auto clock = ctx.clock ? ctx.clock : std::function<double()>(steady_seconds);
  std::string current = prompt;
  for (int attempt = 0; attempt <= ctx.max_reasks; ++attempt) {
    LedgerEntry entry;
    entry.role = std::string(role_name(role));
    entry.model = client.model_name();
    LlmCall call{role, client.model_name(), current, digest(current), attempt, "ok"};
    double start = clock();
    ChatReply reply;
    try {
      reply = client.complete(current);
    } catch (const Error& e) {
      entry.input_tokens = static_cast<long long>(whitespace_tokens(current));
      entry.approximate = true;
      entry.wall_time = clock() - start;
      entry.outcome = "client-error";
      if (ctx.ledger) ctx.ledger->record(entry);
      call.outcome = entry.outcome;
      if (ctx.on_call) ctx.on_call(call);
      throw;
    }
    entry.wall_time = clock() - start;
    entry.input_tokens = reply.input_tokens.value_or(static_cast<long long>(whitespace_tokens(current)));
    entry.output_tokens = reply.output_tokens.value_or(static_cast<long long>(whitespace_tokens(reply.text)));
    entry.approximate = !reply.input_tokens || !reply.output_tokens;
    std::string why = accept(reply.text);
    entry.outcome = why.empty() ? "ok" : "parse-failure";
    if (ctx.ledger) ctx.ledger->record(entry);
    call.outcome = entry.outcome;
    if (ctx.on_call) ctx.on_call(call);
    if (why.empty()) return reply.text;
    current = prompt + "\n\nYour previous reply could not be used (" + why +
              "). Reply again and follow the response format exactly.";
  }
  return std::nullopt;
}

GeneratedSolver generate(const OperatorContext& ctx, Role role, const std::string& prompt) {
  ParsedSolver parsed;
  auto accept = [&](const std::string& text) -> std::string {
    std::string why;
    auto p = parse_solver_reply(text, &why);
    if (!p) return why;
    if (auto lib = forbidden_import(p->code)) return "imports forbidden library " + *lib;
    parsed = std::move(*p);
    return {};
  };
  if (!ask(ctx, role, prompt, accept)) {
    throw Error(ErrorKind::ParseFailure,
                std::string(role_name(role)) + " reply had no usable code block after " +
                    std::to_string(ctx.max_reasks) + " re-asks");
  }
  return {parsed.sketch, parsed.code};
}

std::string nonempty_string(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || !it->is_string()) return {};
  std::string s = it->get<std::string>();
  if (s.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  return s;
}

// Most frequent violation constraint among unclean outcomes, first seen on ties.
std::string frequent_violation(const std::vector<const ExecutionOutcome*>& outcomes, int* count) {
  std::vector<std::pair<std::string, int>> tally;
  for (const ExecutionOutcome* o : outcomes) {
    if (o->clean()) continue;
    std::string name = o->evaluation.violation ? o->evaluation.violation->constraint : std::string(status_name(o->status));
    auto it = std::find_if(tally.begin(), tally.end(), [&](const auto& t) { return t.first == name; });
    if (it == tally.end()) {
      tally.emplace_back(name, 1);
    } else {
      ++it->second;
    }
  }
  std::pair<std::string, int> best{"", 0};
  for (const auto& t : tally) {
    if (t.second > best.second) best = t;
  }
  if (count) *count = best.second;
  return best.first;
}

std::string first_line(const std::string& text) {
  std::string line = text.substr(0, text.find('\n'));
  return line.empty() ? "unnamed approach" : line;
}

}  // namespace

GeneratedSolver propose(const OperatorContext& ctx, const std::string& task, const std::string& memory_section) {
  std::string prompt = render_template(templates_of(ctx).body(TemplateId::Proposer),
                                       {{"task_description", task}, {"global_memory", memory_section}});
  return generate(ctx, Role::Propose, prompt);
}

GeneratedSolver repair(const OperatorContext& ctx, const std::string& task, const Record& parent,
                       const std::string& parent_code, const std::string& history_section) {
  std::string prompt = render_template(templates_of(ctx).body(TemplateId::Debug),
                                       {{"task_description", task},
                                        {"branch_memory", history_section},
                                        {"previous_code", parent_code},
                                        {"execution_output", render_execution_output(parent.E)}});
  return generate(ctx, Role::Repair, prompt);
}

GeneratedSolver improve(const OperatorContext& ctx, const std::string& task, const Record& parent,
                        const std::string& parent_code, const std::string& history_section) {
  std::map<std::string, std::string> bindings{
      {"task_description", task}, {"branch_memory", history_section}, {"previous_code", parent_code}};
  // Custom improve templates may also show the parent's run.
  bindings["execution_output"] = render_execution_output(parent.E);
  std::string prompt = render_template(templates_of(ctx).body(TemplateId::Improve), bindings);
  return generate(ctx, Role::Improve, prompt);
}

Diagnostic fallback_diagnostic(std::span<const ExecutionOutcome> current) {
  std::vector<const ExecutionOutcome*> all;
  int valid = 0;
  bool bug = false;
  for (const ExecutionOutcome& o : current) {
    all.push_back(&o);
    valid += o.clean() ? 1 : 0;
    if (!o.clean() && o.status != ExecStatus::TimeoutNoYield) bug = true;
  }
  Diagnostic d;
  d.is_bug = bug;
  d.fallback = true;
  d.summary = "Valid on " + std::to_string(valid) + " of " + std::to_string(current.size()) + " instances.";
  int count = 0;
  std::string name = frequent_violation(all, &count);
  if (count > 0) d.summary += " Most frequent failure: " + name + " (" + std::to_string(count) + " instances).";
  return d;
}

Diagnostic critic(const OperatorContext& ctx, const std::string& task, const CriticSide& current,
                  const std::optional<CriticSide>& parent) {
  std::map<std::string, std::string> bindings{
      {"task_description", task},
      {"current_code", current.code ? *current.code : std::string()},
      {"current_logs", render_execution_output(current.outcomes)},
      {"parent_code", parent && parent->code ? *parent->code : std::string(kInitialDraftCode)},
      {"previous_logs", parent ? render_execution_output(parent->outcomes) : std::string(kInitialDraftLogs)}};
  std::string prompt = render_template(templates_of(ctx).body(TemplateId::Critic), bindings);
  Diagnostic out;
  auto accept = [&](const std::string& text) -> std::string {
    auto doc = extract_json_object(text);
    if (!doc) return "no JSON object";
    auto bug = doc->find("is_bug");
    if (bug == doc->end() || !bug->is_boolean()) return "is_bug missing or not a boolean";
    std::string summary = nonempty_string(*doc, "summary");
    if (summary.empty()) return "summary missing or empty";
    out = {bug->get<bool>(), summary, false};
    return {};
  };
  if (!ask(ctx, Role::Critic, prompt, accept)) return fallback_diagnostic(current.outcomes);
  return out;
}

GlobalMemoryEntry fallback_reflection(int branch_id, std::span<const Record* const> records) {
  const Record* best = records.empty() ? nullptr : &select_final_record(records);
  std::vector<const ExecutionOutcome*> outcomes;
  for (const Record* r : records) {
    for (const ExecutionOutcome& o : r->E) outcomes.push_back(&o);
  }
  int count = 0;
  std::string violation = frequent_violation(outcomes, &count);
  std::string design = best ? first_line(best->pi) : "unnamed approach";
  std::string failures = count > 0 ? "Most frequent failure: " + violation + " (" + std::to_string(count) + " instances)."
                                   : "Score plateaued without violations.";
  std::string directive = "Do not reuse this approach: " + design;
  return make_global_entry(branch_id, design, failures, directive);
}

GlobalMemoryEntry reflect(const OperatorContext& ctx, int branch_id, const std::string& history_section,
                          std::span<const Record* const> records) {
  if (records.empty()) throw Error(ErrorKind::EmptyMemory, "reflect needs at least one record");
  std::string prompt =
      render_template(templates_of(ctx).body(TemplateId::Reflection), {{"trajectory_history", history_section}});
  GlobalMemoryEntry out;
  auto accept = [&](const std::string& text) -> std::string {
    auto doc = extract_json_object(text);
    if (!doc) return "no JSON object";
    std::string design = nonempty_string(*doc, "algorithmic design");
    std::string failures = nonempty_string(*doc, "failure and stagnation reason");
    std::string constraint = nonempty_string(*doc, "constraint");
    if (design.empty() || failures.empty() || constraint.empty()) return "missing or empty required key";
    out = make_global_entry(branch_id, design, failures, constraint);
    return {};
  };
  if (!ask(ctx, Role::Reflect, prompt, accept)) return fallback_reflection(branch_id, records);
  return out;
}

}  // namespace heursynth
