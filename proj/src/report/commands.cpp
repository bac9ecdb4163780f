#include "heursynth/report/commands.hpp"

#include <ostream>

#include "heursynth/common/error.hpp"
#include "heursynth/eval/evaluate.hpp"
#include "heursynth/eval/oracle.hpp"
#include "heursynth/eval/score.hpp"
#include "heursynth/problem/serialize.hpp"
#include "heursynth/report/artifact.hpp"
#include "heursynth/report/report.hpp"

namespace heursynth {
namespace fs = std::filesystem;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); }

fs::path resolve(const fs::path& base, const fs::path& p) { return p.is_absolute() || base.empty() ? p : base / p; }

Json read_json_file(const fs::path& file) {
  try {
    return Json::parse(read_text_file(file));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::MalformedSchema, file.string() + ": " + e.what());
  }
}

}  // namespace

RunConfig parse_run_config(const Json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) invalid("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "search" && key != "roles" && key != "sandbox" && key != "rates") invalid("unknown config section " + key);
  }
  RunConfig c;
  c.base_dir = base_dir;
  if (doc.contains("search")) c.search = search_config_from_json(doc["search"]);
  if (doc.contains("roles")) {
    if (!doc["roles"].is_object()) invalid("roles must be an object");
    c.roles = doc["roles"];
  }
  try {
    if (doc.contains("sandbox")) {
      const Json& s = doc["sandbox"];
      c.backend = s.value("backend", c.backend);
      if (c.backend != "subprocess" && c.backend != "inprocess") invalid("unknown sandbox backend " + c.backend);
      if (s.contains("worker_command")) c.worker_command = s["worker_command"].get<std::vector<std::string>>();
      if (c.worker_command.empty()) invalid("worker_command must not be empty");
      c.sandbox.network_isolation = s.value("network_isolation", c.sandbox.network_isolation);
      c.sandbox.insecure_override = s.value("insecure_override", c.sandbox.insecure_override);
      if (s.contains("memory_limit_mb")) c.sandbox.memory_limit_bytes = s["memory_limit_mb"].get<std::uint64_t>() << 20;
      if (s.contains("scratch_root")) c.sandbox.scratch_root = s["scratch_root"].get<std::string>();
    }
    if (doc.contains("rates")) {
      for (const auto& [model, r] : doc["rates"].items()) {
        c.rates[model] = Rates{r.at("input_per_million").get<double>(), r.at("output_per_million").get<double>()};
      }
    }
  } catch (const Json::exception& e) {
    invalid(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_run_config(const fs::path& file) {
  if (!fs::exists(file)) throw Error(ErrorKind::Usage, "config file " + file.string() + " not found");
  Json doc = Json::parse(read_text_file(file), nullptr, false);
  if (doc.is_discarded()) invalid(file.string() + " is not valid JSON");
  return parse_run_config(doc, file.parent_path());
}

Json run_config_to_json(const RunConfig& c) {
  Json rates = Json::object();
  for (const auto& [model, r] : c.rates) {
    rates[model] = {{"input_per_million", r.input_per_million}, {"output_per_million", r.output_per_million}};
  }
  return Json{{"search", search_config_to_json(c.search)},
              {"roles", c.roles},
              {"sandbox",
               {{"backend", c.backend},
                {"worker_command", c.worker_command},
                {"network_isolation", c.sandbox.network_isolation},
                {"insecure_override", c.sandbox.insecure_override},
                {"memory_limit_mb", c.sandbox.memory_limit_bytes >> 20},
                {"scratch_root", c.sandbox.scratch_root.string()}}},
              {"rates", rates}};
}

namespace {

std::shared_ptr<ChatModelClient> make_client(const Json& spec, const fs::path& base_dir) {
  if (!spec.is_object()) invalid("client spec must be an object");
  try {
    std::string provider = spec.value("provider", std::string("openai"));
    if (provider == "scripted") {
      std::vector<std::string> replies;
      if (spec.contains("replies")) replies = spec["replies"].get<std::vector<std::string>>();
      if (spec.contains("replies_file")) {
        Json list = read_json_file(resolve(base_dir, spec["replies_file"].get<std::string>()));
        for (const Json& r : list) replies.push_back(r.get<std::string>());
      }
      return std::make_shared<ScriptedClient>(spec.value("model", std::string("scripted")), std::move(replies));
    }
    if (provider != "openai") invalid("unknown provider " + provider);
    HttpClientConfig h;
    h.endpoint = spec.value("endpoint", h.endpoint);
    h.model = spec.value("model", h.model);
    h.api_key_env = spec.value("api_key_env", h.api_key_env);
    h.max_attempts = spec.value("max_attempts", h.max_attempts);
    h.backoff_initial = spec.value("backoff_initial", h.backoff_initial);
    h.backoff_factor = spec.value("backoff_factor", h.backoff_factor);
    h.timeout_seconds = spec.value("timeout_seconds", h.timeout_seconds);
    if (spec.contains("temperature")) h.temperature = spec["temperature"].get<double>();
    return std::make_shared<OpenAiCompatibleClient>(h);
  } catch (const Json::exception& e) {
    invalid(std::string("client spec: ") + e.what());
  }
}

}  // namespace

OperatorRoleMap build_roles(const Json& roles, const fs::path& base_dir) {
  if (!roles.is_object()) invalid("roles must be an object");
  OperatorRoleMap map;
  std::shared_ptr<ChatModelClient> generator, reviewer;
  if (roles.contains("generator")) generator = make_client(roles["generator"], base_dir);
  if (roles.contains("reviewer")) reviewer = make_client(roles["reviewer"], base_dir);
  for (Role role : kAllRoles) {
    std::string name(role_name(role));
    if (roles.contains(name)) {
      map.bind(role, make_client(roles[name], base_dir));
    } else if (role == Role::Critic || role == Role::Reflect) {
      if (reviewer) map.bind(role, reviewer);
    } else if (generator) {
      map.bind(role, generator);
    }
  }
  for (const auto& [key, value] : roles.items()) {
    if (key != "generator" && key != "reviewer" && !parse_role(key)) invalid("unknown role " + key);
  }
  if (!map.complete()) invalid("roles must bind every operator (generator/reviewer or per-role entries)");
  return map;
}

bool all_scripted(const Json& roles) {
  if (!roles.is_object() || roles.empty()) return false;
  for (const auto& [key, spec] : roles.items()) {
    if (!spec.is_object() || spec.value("provider", std::string("openai")) != "scripted") return false;
  }
  return true;
}

std::unique_ptr<WorkerBackend> build_backend(const RunConfig& config) {
  if (config.backend == "inprocess") return std::make_unique<InProcessBackend>(config.sandbox.log_cap_bytes);
  return std::make_unique<SubprocessBackend>(config.worker_command, sandbox_policy(config.sandbox));
}

namespace {

struct Prepared {
  RunConfig config;
  Dataset dev, test;
  std::optional<TemplateSet> templates;
};

// Usage-level checks; throws Error(Usage) for missing inputs.
Prepared prepare(const SynthesizeOptions& o) {
  if (o.config.empty()) throw Error(ErrorKind::Usage, "--config is required");
  if (o.dev.empty() || !fs::exists(o.dev)) throw Error(ErrorKind::Usage, "dev dataset path missing or not found");
  if (o.test.empty() || !fs::exists(o.test)) throw Error(ErrorKind::Usage, "test dataset path missing or not found");
  if (o.out.empty()) throw Error(ErrorKind::Usage, "--out is required");
  Prepared p{load_run_config(o.config), load_dataset(o.dev, Split::Dev), load_dataset(o.test, Split::Test), {}};
  if (p.dev.domain != p.test.domain) throw Error(ErrorKind::Usage, "dev and test datasets are for different domains");
  if (o.domain && *o.domain != p.dev.domain) {
    throw Error(ErrorKind::Usage, "datasets are for " + std::string(domain_name(p.dev.domain)) + ", not " +
                                      std::string(domain_name(*o.domain)));
  }
  SearchConfig& s = p.config.search;
  if (o.budget) s.budget = *o.budget;
  if (o.depth_cap) s.depth_cap = *o.depth_cap;
  if (o.timeout) s.timeout = *o.timeout;
  if (o.seed) s.rng_seed = *o.seed;
  s.ablations.no_global |= o.no_global;
  s.ablations.no_branch_local |= o.no_branch_local;
  s.ablations.no_failed_nodes |= o.no_failed_nodes;
  s.ablations.flat_memory |= o.flat_memory;
  s.validate();
  if (o.templates) p.templates = TemplateSet::from_directory(*o.templates);
  return p;
}

int report_error(std::ostream& err, const Error& e) {
  err << "error: " << e.what() << "\n";
  switch (e.kind()) {
    case ErrorKind::Usage:
    case ErrorKind::InvalidConfig:
      return kExitUsage;
    default:
      return kExitRuntime;
  }
}

ExecutorConfig executor_config(const SearchConfig& s) {
  ExecutorConfig ec;
  ec.timeout = s.timeout;
  ec.grace = s.grace;
  ec.parallelism = s.parallelism;
  ec.strict_crash_voids_yields = s.strict_crash_voids_yields;
  return ec;
}

std::string fixed4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

}  // namespace

int cmd_synthesize(const SynthesizeOptions& o, std::ostream& out, std::ostream& err) {
  Prepared p;
  try {
    p = prepare(o);
  } catch (const Error& e) {
    return report_error(err, e);
  }

  std::unique_ptr<RunWriter> writer;
  std::unique_ptr<SearchState> state;
  try {
    OperatorRoleMap roles = build_roles(p.config.roles, p.config.base_dir);
    std::unique_ptr<WorkerBackend> backend = build_backend(p.config);
    writer = std::make_unique<RunWriter>(o.out);
    std::string run_id = o.run_id.empty() ? fs::absolute(o.out).filename().string() : o.run_id;
    Json snapshot = run_config_to_json(p.config);
    snapshot["run_id"] = run_id;
    snapshot["domain"] = domain_name(p.dev.domain);
    snapshot["dev_path"] = o.dev.string();
    snapshot["test_path"] = o.test.string();
    writer->write_config(snapshot);
    writer->test_dataset(p.test);

    state = std::make_unique<SearchState>();
    state->store = ArtifactStore(writer->solvers_dir());
    state->ledger.set_rates(p.config.rates);
    RunWriter* w = writer.get();
    state->ledger.on_append = [w](const LedgerEntry& e) { w->ledger(e); };
    SearchState* st = state.get();
    SearchEnv env;
    env.roles = &roles;
    env.backend = backend.get();
    env.templates = p.templates ? &*p.templates : nullptr;
    if (all_scripted(p.config.roles)) env.llm_clock = [] { return 0.0; };
    env.on_trace = [w](const Json& e) { w->trace(e); };
    env.on_record = [w](const Record& r) { w->record(r); };
    env.on_global = [w, st](const GlobalMemoryEntry&) { w->global(st->global_memory); };

    Problem problem{p.dev.domain, std::string(problem_description(p.dev.domain)), p.dev};
    SearchResult result;
    try {
      result = run_search(problem, p.config.search, env, *state);
    } catch (const Error& e) {
      std::vector<Record> records;
      for (const Record* r : state->all_records()) records.push_back(*r);
      writer->convergence(convergence_csv(convergence_rows(records)));
      err << "error: " << e.what() << "\n";
      err << "partial run persisted in " << o.out.string() << "\n";
      return kExitPartial;
    }
    std::vector<Record> records;
    for (const Record* r : state->all_records()) records.push_back(*r);
    writer->convergence(convergence_csv(convergence_rows(records)));

    ExecutionReport test = execute_solver(result.source, p.test, *backend, executor_config(p.config.search));
    for (const ExecutionOutcome& oc : test.outcomes) writer->test_outcome(oc);
    DatasetMetrics m = dataset_metrics(test.per_instance_scores);
    Json final{{"run_id", run_id},
               {"selected",
                {{"record_id", result.selected.record_id},
                 {"branch_id", result.selected.branch_id},
                 {"depth", result.selected.depth},
                 {"v", result.selected.v},
                 {"f", result.selected.f},
                 {"solver_ref", result.selected.solver_ref}}},
               {"test", {{"mean_score", m.mean_score}, {"mean_valid", m.mean_valid}}},
               {"executions", state->executions},
               {"stranded_budget", state->stranded_budget}};
    writer->final(final);
    out << "selected " << result.selected.record_id << " (dev v=" << result.selected.v
        << ", f=" << fixed4(result.selected.f) << ")\n";
    out << "test mean score " << fixed4(m.mean_score) << ", validity " << fixed4(m.mean_valid) << "\n";
    return kExitOk;
  } catch (const Error& e) {
    int code = report_error(err, e);
    if (writer && code == kExitRuntime) {
      err << "partial run persisted in " << o.out.string() << "\n";
      return kExitPartial;
    }
    return code;
  }
}

int cmd_report(const fs::path& artifact_dir, const std::optional<fs::path>& out_dir, std::ostream& out,
               std::ostream& err) {
  try {
    if (RunLock::held_by_other(artifact_dir)) {
      throw Error(ErrorKind::Io, "a synthesis run is still writing to " + artifact_dir.string());
    }
    LoadedRun run = load_run(artifact_dir);
    fs::path dest = out_dir ? *out_dir : artifact_dir / "report";
    for (const std::string& name : write_report(run, dest)) out << (dest / name).string() << "\n";
    if (!run.complete()) err << "note: run is partial (no final selection recorded)\n";
    return kExitOk;
  } catch (const Error& e) {
    return report_error(err, e);
  }
}

int cmd_grade(DomainId domain, const fs::path& instance_path, const fs::path& solution_path, std::ostream& out,
              std::ostream& err) {
  try {
    if (!fs::exists(instance_path)) throw Error(ErrorKind::Usage, "instance file " + instance_path.string() + " not found");
    if (!fs::exists(solution_path)) throw Error(ErrorKind::Usage, "solution file " + solution_path.string() + " not found");
    Json doc = read_json_file(instance_path);
    if (doc.is_object() && doc.contains("instances")) {
      if (!doc["instances"].is_array() || doc["instances"].size() != 1) {
        throw Error(ErrorKind::MalformedSchema, instance_path.string() + ": expected a single instance");
      }
      doc = doc["instances"][0];
    }
    ProblemInstance instance = instance_from_json(domain, doc);
    Json solution = read_json_file(solution_path);
    RawOutcome outcome = evaluate_json(instance, solution);
    out << "instance: " << instance.instance_id << "\n";
    out << "feasible: " << (outcome.feasible ? "yes" : "no") << "\n";
    if (outcome.violation) out << "violation: " << outcome.violation->describe() << "\n";
    if (outcome.objective) out << "objective: " << format_number(*outcome.objective) << "\n";
    if (instance.reference_objective) {
      out << "reference_objective: " << format_number(*instance.reference_objective) << "\n";
      out << "score: " << format_number(normalize_score(outcome, *instance.reference_objective).score) << "\n";
    } else {
      out << "score: unavailable (no reference_objective)\n";
    }
    return kExitOk;
  } catch (const Error& e) {
    return report_error(err, e);
  }
}

Dataset generate_dataset(const GenerateOptions& o) {
  if (o.count < 1) throw Error(ErrorKind::Usage, "--count must be at least 1");
  Dataset ds;
  ds.domain = o.domain;
  ds.split = o.split;
  for (int i = 0; i < o.count; ++i) {
    GeneratedInstance g = generate_with_witness(o.domain, o.size, o.seed + static_cast<std::uint64_t>(i));
    double reference;
    if (o.size == SizeClass::Small) {
      RawOutcome best = oracle_solve(g.instance);
      if (!best.feasible) throw Error(ErrorKind::InvariantViolation, "oracle found no feasible solution");
      reference = *best.objective;
    } else {
      RawOutcome w = evaluate(g.instance, g.witness);
      if (!w.feasible) throw Error(ErrorKind::InvariantViolation, "generator witness is infeasible");
      reference = *w.objective;
    }
    ds.instances.push_back(attach_reference_objective(g.instance, reference));
  }
  return ds;
}

int cmd_generate(const GenerateOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (o.out.empty()) throw Error(ErrorKind::Usage, "--out is required");
    Dataset ds = generate_dataset(o);
    if (o.out.has_parent_path()) fs::create_directories(o.out.parent_path());
    save_dataset(ds, o.out);
    out << "wrote " << ds.size() << " " << domain_name(o.domain) << " instances to " << o.out.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    return report_error(err, e);
  }
}

int cmd_stability(const SynthesizeOptions& o, int runs, std::ostream& out, std::ostream& err) {
  Prepared p;
  try {
    p = prepare(o);
    if (runs < 2) throw Error(ErrorKind::Usage, "--runs must be at least 2");
  } catch (const Error& e) {
    return report_error(err, e);
  }
  try {
    std::unique_ptr<WorkerBackend> backend = build_backend(p.config);
    SearchEnv env;
    env.backend = backend.get();
    env.templates = p.templates ? &*p.templates : nullptr;
    if (all_scripted(p.config.roles)) env.llm_clock = [] { return 0.0; };
    Problem problem{p.dev.domain, std::string(problem_description(p.dev.domain)), p.dev};
    auto roles_for_run = [&](int) { return build_roles(p.config.roles, p.config.base_dir); };
    StabilitySummary s = run_multi(problem, p.test, p.config.search, env, runs, roles_for_run);
    Json doc{{"runs", Json::array()},
             {"avg", {{"mean", s.avg.mean}, {"stdev", s.avg.stdev}}},
             {"valid", {{"mean", s.valid.mean}, {"stdev", s.valid.stdev}}}};
    for (std::size_t i = 0; i < s.runs.size(); ++i) {
      doc["runs"].push_back({{"seed", p.config.search.rng_seed + i},
                             {"mean_score", s.runs[i].mean_score},
                             {"mean_valid", s.runs[i].mean_valid}});
      out << "run " << i << ": avg " << fixed4(s.runs[i].mean_score) << ", valid " << fixed4(s.runs[i].mean_valid)
          << "\n";
    }
    out << "avg " << fixed4(s.avg.mean) << " +/- " << fixed4(s.avg.stdev) << "\n";
    out << "valid " << fixed4(s.valid.mean) << " +/- " << fixed4(s.valid.stdev) << "\n";
    fs::create_directories(o.out);
    write_text_file(o.out / "stability.json", doc.dump(2) + "\n");
    return kExitOk;
  } catch (const Error& e) {
    return report_error(err, e);
  }
}

}  // namespace heursynth
