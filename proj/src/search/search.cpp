#include "heursynth/search/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "heursynth/common/error.hpp"
#include "heursynth/common/rng.hpp"
#include "heursynth/eval/score.hpp"

namespace heursynth {

void SearchConfig::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
  if (budget < 1) bad("budget must be at least 1");
  if (depth_cap < 1) bad("depth cap must be at least 1");
  if (!(timeout > 0.0)) bad("timeout must be positive");
  if (grace < 0.0) bad("grace must be non-negative");
  if (improvement_window < 1) bad("improvement window must be at least 1");
  if (parallelism < 0) bad("parallelism must be non-negative");
  if (ablations.no_branch_local && ablations.flat_memory) bad("no_branch_local and flat_memory are exclusive");
}

Json search_config_to_json(const SearchConfig& c) {
  return Json{{"budget", c.budget},
              {"depth_cap", c.depth_cap},
              {"timeout", c.timeout},
              {"grace", c.grace},
              {"rng_seed", c.rng_seed},
              {"ablations",
               {{"no_global", c.ablations.no_global},
                {"no_branch_local", c.ablations.no_branch_local},
                {"no_failed_nodes", c.ablations.no_failed_nodes},
                {"flat_memory", c.ablations.flat_memory}}},
              {"improvement_window", c.improvement_window},
              {"parallelism", c.parallelism},
              {"stop_rule", c.stop_rule == StopRule::Never ? "never" : "stagnation"},
              {"strict_crash_voids_yields", c.strict_crash_voids_yields}};
}

SearchConfig search_config_from_json(const Json& j) {
  SearchConfig c;
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "search section must be an object");
  try {
    c.budget = j.value("budget", c.budget);
    c.depth_cap = j.value("depth_cap", c.depth_cap);
    c.timeout = j.value("timeout", c.timeout);
    c.grace = j.value("grace", c.grace);
    c.rng_seed = j.value("rng_seed", c.rng_seed);
    c.improvement_window = j.value("improvement_window", c.improvement_window);
    c.parallelism = j.value("parallelism", c.parallelism);
    c.strict_crash_voids_yields = j.value("strict_crash_voids_yields", c.strict_crash_voids_yields);
    if (j.contains("ablations")) {
      const Json& a = j.at("ablations");
      c.ablations.no_global = a.value("no_global", false);
      c.ablations.no_branch_local = a.value("no_branch_local", false);
      c.ablations.no_failed_nodes = a.value("no_failed_nodes", false);
      c.ablations.flat_memory = a.value("flat_memory", false);
    }
    std::string rule = j.value("stop_rule", std::string("stagnation"));
    if (rule == "never") {
      c.stop_rule = StopRule::Never;
    } else if (rule != "stagnation") {
      throw Error(ErrorKind::InvalidConfig, "unknown stop_rule " + rule);
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("search section: ") + e.what());
  }
  c.validate();
  return c;
}

bool improvement_expected(const BranchLocalMemory& branch, int window) {
  if (!branch.has_valid()) return true;
  const auto& records = branch.records();
  if (static_cast<int>(records.size()) <= window) return true;
  constexpr double none = -std::numeric_limits<double>::infinity();
  double before = none, now = none;
  std::size_t cut = records.size() - static_cast<std::size_t>(window);
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].v != 1) continue;
    if (i < cut) before = std::max(before, records[i].f);
    now = std::max(now, records[i].f);
  }
  return now - before > kEpsilonImprove;
}

std::vector<const Record*> SearchState::all_records() const {
  std::vector<const Record*> out;
  for (const BranchLocalMemory& b : branches) {
    for (const Record& r : b.records()) out.push_back(&r);
  }
  std::sort(out.begin(), out.end(), [](const Record* a, const Record* b) { return a->created < b->created; });
  return out;
}

namespace {

class Run {
 public:
  Run(const Problem& problem, const SearchConfig& config, const SearchEnv& env, SearchState& state)
      : problem_(problem), config_(config), env_(env), state_(state), rng_(config.rng_seed) {
    ctx_.roles = env.roles;
    ctx_.ledger = &state.ledger;
    ctx_.templates = env.templates;
    ctx_.clock = env.llm_clock;
    ctx_.on_call = [this](const LlmCall& call) {
      emit({{"event", "llm-call"},
            {"role", role_name(call.role)},
            {"model", call.model},
            {"prompt_digest", call.prompt_digest},
            {"attempt", call.attempt},
            {"outcome", call.outcome}});
    };
  }

  SearchResult go() {
    emit({{"event", "run-start"}, {"budget", config_.budget}, {"depth_cap", config_.depth_cap}});
    while (state_.remaining_budget >= 2) branch();
    if (state_.remaining_budget == 1) {
      state_.stranded_budget = 1;
      emit({{"event", "stranded"}, {"stranded_budget", 1}});
    }
    auto [selected, source] = final_selection(state_.branches, state_.store);
    emit({{"event", "final"}, {"record_id", selected.record_id}, {"v", selected.v}, {"f", selected.f}});
    return {std::move(selected), std::move(source)};
  }

 private:
  void emit(Json event) {
    event["seq"] = state_.trace.size();
    event["budget_remaining"] = state_.remaining_budget;
    event["executions"] = state_.executions;
    state_.trace.push_back(event);
    if (env_.on_trace) env_.on_trace(state_.trace.back());
  }

  const AblationFlags& flags() const { return config_.ablations; }

  std::vector<const Record*> visible(std::vector<const Record*> records) const {
    if (flags().no_failed_nodes) {
      std::erase_if(records, [](const Record* r) { return r->v != 1; });
    }
    return records;
  }

  std::string proposer_memory() const {
    if (flags().flat_memory) {
      auto all = state_.all_records();
      if (all.empty()) return std::string(kNoGlobalMemory);
      return render_history(visible(all), all);
    }
    if (flags().no_global) return std::string(kNoGlobalMemory);
    return render_global_memory(state_.global_memory);
  }

  std::string refinement_history(const BranchLocalMemory& branch, const Record& parent) const {
    std::vector<const Record*> lookup;
    for (const Record& r : branch.records()) lookup.push_back(&r);
    if (flags().flat_memory) {
      auto all = state_.all_records();
      return render_history(visible(all), all);
    }
    if (flags().no_branch_local) {
      std::vector<const Record*> only{&parent};
      return render_history(visible(only), lookup);
    }
    return render_history(visible(lookup), lookup);
  }

  ExecutionReport execute(const std::string& source) {
    ExecutorConfig ec;
    ec.timeout = config_.timeout;
    ec.grace = config_.grace;
    ec.parallelism = config_.parallelism;
    ec.strict_crash_voids_yields = config_.strict_crash_voids_yields;
    ExecutionReport report = execute_solver(source, problem_.dev, *env_.backend, ec);
    --state_.remaining_budget;
    ++state_.executions;
    return report;
  }

  Record make_record(BranchLocalMemory& branch, int depth, const GeneratedSolver& solver, const Record* parent,
                     const std::string& mode) {
    std::string id = "b" + std::to_string(branch.branch_id()) + "-d" + std::to_string(depth);
    state_.store.put(id, solver.code);
    ExecutionReport report = execute(solver.code);

    CriticSide current{&solver.code, report.outcomes};
    std::optional<CriticSide> before;
    if (parent) before = CriticSide{&state_.store.get(parent->solver_ref), parent->E};
    Diagnostic d = critic(ctx_, problem_.description, current, before);

    Record r;
    r.record_id = id;
    r.branch_id = branch.branch_id();
    r.depth = depth;
    r.pi = solver.sketch;
    r.rho = d.summary;
    r.is_bug = d.is_bug;
    r.v = report.v;
    r.f = report.f;
    r.E = std::move(report.outcomes);
    if (parent) r.parent_record_id = parent->record_id;
    r.solver_ref = id;
    r.created = created_++;
    emit({{"event", "execute"},
          {"mode", mode},
          {"branch_id", r.branch_id},
          {"depth", depth},
          {"record_id", id},
          {"parent_record_id", parent ? Json(parent->record_id) : Json(nullptr)},
          {"v", r.v},
          {"f", r.f},
          {"is_bug", r.is_bug},
          {"critic_fallback", d.fallback}});
    return r;
  }

  void branch() {
    int id = ++state_.branch_counter;
    state_.branches.emplace_back(id);
    std::size_t slot = state_.branches.size() - 1;
    emit({{"event", "branch-open"}, {"branch_id", id}});

    GeneratedSolver first = propose(ctx_, problem_.description, proposer_memory());
    append(slot, make_record(state_.branches[slot], 1, first, nullptr, "propose"));

    std::string reason = "depth-cap";
    for (int depth = 2; depth <= config_.depth_cap; ++depth) {
      BranchLocalMemory& memory = state_.branches[slot];
      if (state_.remaining_budget == 0) {
        reason = "budget";
        break;
      }
      if (config_.stop_rule == StopRule::Stagnation && !improvement_expected(memory, config_.improvement_window)) {
        reason = "stagnation";
        break;
      }
      bool repairing = !memory.has_valid();
      const Record& parent = repairing ? select_repair_parent(memory, rng_) : select_improve_parent(memory);
      const std::string& parent_code = state_.store.get(parent.solver_ref);
      std::string history = refinement_history(memory, parent);
      GeneratedSolver next = repairing ? repair(ctx_, problem_.description, parent, parent_code, history)
                                       : improve(ctx_, problem_.description, parent, parent_code, history);
      Record record = make_record(memory, depth, next, &parent, repairing ? "repair" : "improve");
      append(slot, std::move(record));
    }
    emit({{"event", "branch-end"}, {"branch_id", id}, {"reason", reason}});

    if (flags().no_global || flags().flat_memory) return;
    const BranchLocalMemory& memory = state_.branches[slot];
    std::vector<const Record*> records;
    for (const Record& r : memory.records()) records.push_back(&r);
    GlobalMemoryEntry entry = reflect(ctx_, id, render_history(records, records), records);
    add_global_entry(state_.global_memory, entry);
    if (env_.on_global) env_.on_global(state_.global_memory.back());
    emit({{"event", "reflect"}, {"branch_id", id}, {"token_estimate", entry.token_estimate}});
  }

  void append(std::size_t slot, Record record) {
    state_.branches[slot].append(std::move(record));
    if (env_.on_record) env_.on_record(state_.branches[slot].records().back());
  }

  const Problem& problem_;
  const SearchConfig& config_;
  const SearchEnv& env_;
  SearchState& state_;
  Rng rng_;
  OperatorContext ctx_;
  int created_ = 0;
};

}  // namespace

SearchResult run_search(const Problem& problem, const SearchConfig& config, const SearchEnv& env,
                        SearchState& state) {
  config.validate();
  if (problem.dev.instances.empty()) throw Error(ErrorKind::DatasetEmpty, "dev dataset is empty");
  if (!env.roles || !env.roles->complete()) throw Error(ErrorKind::InvalidConfig, "every operator role needs a client");
  if (!env.backend) throw Error(ErrorKind::InvalidConfig, "no worker backend");
  state.budget_total = config.budget;
  state.remaining_budget = config.budget;
  Run run(problem, config, env, state);
  try {
    return run.go();
  } catch (const Error& e) {
    Json event{{"event", "abort"},
               {"error", e.what()},
               {"seq", state.trace.size()},
               {"budget_remaining", state.remaining_budget},
               {"executions", state.executions}};
    state.trace.push_back(event);
    if (env.on_trace) env.on_trace(event);
    throw;
  }
}

MetricStats population_stats(const std::vector<double>& values) {
  MetricStats s;
  if (values.empty()) return s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.stdev = std::sqrt(var / static_cast<double>(values.size()));
  return s;
}

StabilitySummary run_multi(const Problem& problem, const Dataset& test, const SearchConfig& config,
                           const SearchEnv& env, int run_count,
                           const std::function<OperatorRoleMap(int)>& roles_for_run) {
  if (run_count < 2) throw Error(ErrorKind::InvalidConfig, "stability needs at least 2 runs");
  StabilitySummary summary;
  std::vector<double> avg, valid;
  for (int i = 0; i < run_count; ++i) {
    SearchConfig c = config;
    c.rng_seed = config.rng_seed + static_cast<std::uint64_t>(i);
    SearchEnv e = env;
    OperatorRoleMap roles;
    if (roles_for_run) {
      roles = roles_for_run(i);
      e.roles = &roles;
    }
    auto state = std::make_unique<SearchState>();
    SearchResult result = run_search(problem, c, e, *state);
    ExecutorConfig ec;
    ec.timeout = c.timeout;
    ec.grace = c.grace;
    ec.parallelism = c.parallelism;
    ec.strict_crash_voids_yields = c.strict_crash_voids_yields;
    ExecutionReport report = execute_solver(result.source, test, *env.backend, ec);
    DatasetMetrics m = dataset_metrics(report.per_instance_scores);
    summary.runs.push_back(m);
    avg.push_back(m.mean_score);
    valid.push_back(m.mean_valid);
  }
  summary.avg = population_stats(avg);
  summary.valid = population_stats(valid);
  return summary;
}

}  // namespace heursynth
