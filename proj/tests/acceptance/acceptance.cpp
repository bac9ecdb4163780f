// Acceptance checks: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "heursynth/eval/difficulty.hpp"
#include "heursynth/eval/evaluate.hpp"
#include "heursynth/eval/oracle.hpp"
#include "heursynth/eval/score.hpp"
#include "heursynth/problem/generate.hpp"
#include "heursynth/problem/geometry.hpp"
#include "heursynth/problem/serialize.hpp"
#include "heursynth/report/report.hpp"
#include "heursynth/search/search.hpp"

using namespace heursynth;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// Collects failed conditions for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int failed_criteria = 0;

void criterion(const std::string& name, const std::function<std::string(Check&)>& body) {
  Check c;
  std::string detail;
  try {
    detail = body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  bool ok = c.failures.empty();
  if (!ok) ++failed_criteria;
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail;
  for (const auto& f : c.failures) std::cout << " | " << f;
  std::cout << std::endl;
}

std::string fmt(double x, int digits = 3) {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << x;
  return out.str();
}

// ---------------------------------------------------------------------------

std::string score_properties(Check& c) {
  auto start = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1e4, 1e4);
  std::uniform_real_distribution<double> step(0.0, 100.0);
  int bad_range = 0, bad_symmetry = 0, bad_monotone = 0;
  for (int i = 0; i < 10000; ++i) {
    double h = u(rng), ref = u(rng);
    double s = normalize_score(RawOutcome::ok(h), ref).score;
    if (!(s >= 0.0 && s <= 1.0)) ++bad_range;
    if (s != normalize_score(RawOutcome::ok(ref), h).score) ++bad_symmetry;
    // Moving |h| further from |h*| (either direction) never raises the score.
    double a = std::abs(h), r = std::abs(ref);
    double further = a >= r ? a + step(rng) : std::max(0.0, a - step(rng));
    double s2 = normalize_score(RawOutcome::ok(further), ref).score;
    if (s2 > normalize_score(RawOutcome::ok(a), ref).score) ++bad_monotone;
  }
  c.expect(bad_range == 0, std::to_string(bad_range) + " scores outside [0,1]");
  c.expect(bad_symmetry == 0, std::to_string(bad_symmetry) + " asymmetric pairs");
  c.expect(bad_monotone == 0, std::to_string(bad_monotone) + " monotonicity violations");
  c.expect(normalize_score(RawOutcome::ok(0), 0) == InstanceScore{1, 1.0}, "(0,0) does not score 1");
  c.expect(normalize_score(RawOutcome::fail(Violation{"x", {}, ""}), 5) == InstanceScore{0, 0.0},
           "infeasible does not score (0,0)");
  double t = seconds_since(start);
  c.expect(t < 1.0, "took " + fmt(t) + " s");
  return "10000 pairs in " + fmt(t) + " s";
}

std::string oracle_equivalence(Check& c) {
  auto start = Clock::now();
  long candidates = 0, mismatches = 0;
  for (DomainId d : kAllDomains) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      ProblemInstance inst = generate_instance(d, SizeClass::Small, seed);
      enumerate_oracle_candidates(inst, [&](const CandidateSolution& cand, const OracleVerdict& v) {
        ++candidates;
        RawOutcome r = evaluate(inst, cand);
        bool same = r.feasible == v.feasible && (!r.feasible || std::abs(*r.objective - v.objective) <= 1e-9);
        if (!same && ++mismatches <= 3) {
          c.expect(false, std::string(domain_name(d)) + " seed " + std::to_string(seed) + " disagrees");
        }
      });
    }
  }
  double t = seconds_since(start);
  c.expect(mismatches == 0, std::to_string(mismatches) + " mismatching candidates");
  c.expect(t < 300.0, "took " + fmt(t) + " s");
  return "7 domains x 200 instances, " + std::to_string(candidates) + " candidates, " +
         std::to_string(mismatches) + " mismatches, " + fmt(t, 1) + " s";
}

std::string steiner_analytic(Check& c) {
  double h = std::sqrt(3.0) / 2.0;
  SteinerInstance tri{{{0, 0}, {1, 0}, {0.5, h}}};
  Point2 f = fermat_point(tri.points[0], tri.points[1], tri.points[2]);
  RawOutcome with = evaluate_steiner(tri, SteinerSolution{{f}});
  RawOutcome empty = evaluate_steiner(tri, SteinerSolution{});
  double err = with.objective ? std::abs(*with.objective - (1.0 - h)) : 1.0;
  c.expect(with.feasible && err <= 1e-9, "Fermat objective off by " + std::to_string(err));
  c.expect(empty.feasible && empty.objective && *empty.objective == 0.0, "empty set is not exactly 0");
  return "objective error " + std::to_string(err) + ", empty set 0";
}

// ---------------------------------------------------------------------------

struct ScriptedRun {
  testing::SteinerBench bench;
  testing::ScriptedRoles roles;
  InProcessBackend backend;
  Problem problem;
  SearchEnv env;
  SearchState state;
  std::optional<SearchResult> result;

  explicit ScriptedRun(const testing::SteinerBench& b) : bench(b) {
    problem.domain = DomainId::EuclideanSteiner;
    problem.description = "Place Steiner points to shorten the minimum spanning tree.";
    problem.dev = bench.dev;
    env.backend = &backend;
    env.llm_clock = [] { return 0.0; };
  }

  void run(const SearchConfig& config, std::vector<std::string> reviews = testing::reviews(32)) {
    roles = testing::scripted_roles(testing::sixteen_generations(bench), std::move(reviews));
    env.roles = &roles.roles;
    result = run_search(problem, config, env, state);
  }

  std::string serialized() const {
    std::string out;
    for (const Json& e : state.trace) out += e.dump() + "\n";
    for (const Record* r : state.all_records()) out += record_to_json(*r).dump() + "\n";
    for (const auto& g : state.global_memory) out += global_entry_to_json(g).dump() + "\n";
    for (const auto& l : state.ledger.entries()) out += ledger_entry_to_json(l).dump() + "\n";
    return out;
  }
};

SearchConfig scripted_config(int budget, int depth_cap) {
  SearchConfig c;
  c.budget = budget;
  c.depth_cap = depth_cap;
  c.stop_rule = StopRule::Never;
  c.parallelism = 1;
  c.rng_seed = 7;
  return c;
}

bool budget_conserved(const SearchState& s) {
  for (const Json& e : s.trace) {
    if (e["budget_remaining"].get<int>() + e["executions"].get<int>() != s.budget_total) return false;
  }
  return s.remaining_budget + s.executions == s.budget_total;
}

std::string end_to_end(Check& c) {
  auto start = Clock::now();
  auto bench = testing::steiner_bench(5, 11);
  ScriptedRun a(bench), b(bench);
  a.run(scripted_config(16, 4));
  b.run(scripted_config(16, 4));
  const SearchState& s = a.state;
  c.expect(s.executions == 16, std::to_string(s.executions) + " executions");
  c.expect(s.branches.size() == 4, std::to_string(s.branches.size()) + " branches");
  c.expect(s.global_memory.size() == 4, std::to_string(s.global_memory.size()) + " global entries");
  c.expect(budget_conserved(s), "budget not conserved at some trace event");

  // Independent argmax over the serialized records: valid first, then f, earliest first.
  std::vector<Record> parsed;
  for (const Record* r : s.all_records()) parsed.push_back(record_from_json(bench.dev.domain, record_to_json(*r)));
  const Record* best = nullptr;
  for (const Record& r : parsed) {
    if (!best || std::make_pair(r.v, r.f) > std::make_pair(best->v, best->f) ||
        (r.v == best->v && r.f == best->f && r.created < best->created)) {
      best = &r;
    }
  }
  c.expect(best && best->record_id == a.result->selected.record_id, "final selection differs from argmax");
  c.expect(a.serialized() == b.serialized(), "two runs are not byte-identical");

  // The same script with n = 5 fills three branches and strands one unit.
  ScriptedRun five(bench);
  five.run(scripted_config(16, 5));
  c.expect(five.state.executions == 15 && five.state.branches.size() == 3 && five.state.stranded_budget == 1,
           "n=5 did not give 3 branches, 15 executions, 1 stranded");
  double t = seconds_since(start);
  c.expect(t < 30.0, "took " + fmt(t) + " s");
  return "B=16 n=4: 16 executions, 4 branches, 4 entries, selected " + a.result->selected.record_id +
         ", replay identical; n=5: 3 branches, 1 stranded; " + fmt(t, 2) + " s";
}

// ---------------------------------------------------------------------------

double chi_square(const std::vector<long>& observed, const std::vector<double>& p, long n) {
  double x = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double e = p[i] * static_cast<double>(n);
    x += (observed[i] - e) * (observed[i] - e) / e;
  }
  return x;
}

std::string repair_sampling(Check& c) {
  // Critical value of chi-square with 2 degrees of freedom at p = 0.01.
  const double critical = 9.2103;
  const long draws = 100000;
  auto sample = [&](std::vector<double> fs, std::uint64_t seed) {
    BranchLocalMemory m(1);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      std::optional<std::string> parent;
      if (i > 0) parent = "b1-d1";
      m.append(testing::make_record("b1-d" + std::to_string(i + 1), 1, static_cast<int>(i + 1), 0, fs[i],
                                    static_cast<int>(i), parent));
    }
    Rng rng(seed);
    std::vector<long> counts(fs.size(), 0);
    for (long k = 0; k < draws; ++k) {
      const Record& r = select_repair_parent(m, rng);
      ++counts[static_cast<std::size_t>(r.depth - 1)];
    }
    return counts;
  };
  double x1 = chi_square(sample({0.2, 0.6, 0.2}, 1), {0.2, 0.6, 0.2}, draws);
  double x2 = chi_square(sample({0.0, 0.0, 0.0}, 2), {1.0 / 3, 1.0 / 3, 1.0 / 3}, draws);
  c.expect(x1 < critical, "proportional chi2 " + fmt(x1));
  c.expect(x2 < critical, "uniform chi2 " + fmt(x2));
  return "chi2 proportional " + fmt(x1) + ", uniform " + fmt(x2) + " (critical " + fmt(critical, 4) + ")";
}

// ---------------------------------------------------------------------------

ProblemInstance plane(const std::string& id) {
  Json entry = Json::parse(R"({"payload": {"num_planes": 1, "num_runways": 1,
    "planes": [{"earliest": 0, "target": 10, "latest": 20, "penalty_early": 1, "penalty_late": 10}],
    "separation": [[0]]}, "reference_objective": 10})");
  entry["instance_id"] = id;
  return instance_from_json(DomainId::AircraftLanding, entry);
}

std::string landing(int seq, int t) {
  return R"({"seq": )" + std::to_string(seq) + R"(, "solution": {"schedule": {"1": {"landing_time": )" +
         std::to_string(t) + R"(, "runway": 1}}}})";
}

std::string executor_contract(Check& c) {
  Dataset one{DomainId::AircraftLanding, Split::Dev, {plane("p0")}};
  SandboxConfig sc;
  sc.network_isolation = false;
  SubprocessBackend shell({"/bin/sh"}, sandbox_policy(sc));
  ExecutorConfig ec;
  ec.timeout = 10.0;
  ec.parallelism = 1;
  // Yields at 1, 3 and 9 s land at 11, 13 and 19; a fourth line at about 10.5 s
  // is past the deadline.
  std::string script = "sleep 1\necho '" + landing(1, 11) + "'\nsleep 2\necho '" + landing(2, 13) +
                       "'\nsleep 6\necho '" + landing(3, 19) + "'\nsleep 1.5\necho '" + landing(4, 12) +
                       "'\nsleep 100\n";
  auto start = Clock::now();
  ExecutionOutcome o = execute_solver(script, one, shell, ec).outcomes[0];
  double wall = seconds_since(start);
  double last_t = -1;
  if (o.last_solution) {
    last_t = std::get<AircraftSolution>(o.last_solution->payload).schedule.at(1).landing_time;
  }
  c.expect(o.status == ExecStatus::Solved, "status " + std::string(status_name(o.status)));
  c.expect(last_t == 19, "last solution is not the 9 s yield");
  c.expect(o.yield_count == 3, std::to_string(o.yield_count) + " accepted yields");
  c.expect(o.stderr_log.find("after the deadline") != std::string::npos, "late yield not rejected");
  c.expect(o.wall_time <= ec.timeout + 1.0, "reported wall " + fmt(o.wall_time));
  c.expect(wall <= ec.timeout + 1.0 + 0.25, "measured wall " + fmt(wall));

  ExecutionOutcome crash = execute_solver("echo oops >&2\nexit 1\n", one, shell, ec).outcomes[0];
  c.expect(crash.status == ExecStatus::Crashed && crash.score.score == 0.0, "crash before yield did not score 0");

  Dataset many{DomainId::AircraftLanding, Split::Dev, {}};
  for (int i = 0; i < 12; ++i) many.instances.push_back(plane("p" + std::to_string(i)));
  std::string quick = "test -f \"$1\" || exit 4\necho '" + landing(1, 12) + "'\n";
  ExecutorConfig p1 = ec, p8 = ec;
  p1.parallelism = 1;
  p8.parallelism = 8;
  ExecutionReport r1 = execute_solver(quick, many, shell, p1);
  ExecutionReport r8 = execute_solver(quick, many, shell, p8);
  c.expect(r1.v == r8.v && r1.f == r8.f && r1.per_instance_scores == r8.per_instance_scores,
           "aggregation differs between parallelism 1 and 8");
  return "last yield t=9 s kept, late line rejected, wall " + fmt(wall, 2) + " s, crash scores 0, v/f at p=1 and p=8: " +
         std::to_string(r1.v) + "/" + fmt(r1.f) + " and " + std::to_string(r8.v) + "/" + fmt(r8.f);
}

// ---------------------------------------------------------------------------

std::vector<std::pair<int, int>> budget_trail(const SearchState& s) {
  std::vector<std::pair<int, int>> out;
  for (const Json& e : s.trace) {
    if (e["event"] == "execute") out.emplace_back(e["budget_remaining"].get<int>(), e["executions"].get<int>());
  }
  return out;
}

int occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

std::string ablations(Check& c) {
  auto bench = testing::steiner_bench(5, 11);
  SearchConfig base_cfg = scripted_config(8, 4);
  ScriptedRun base(bench);
  base.run(base_cfg);
  auto base_prompts = base.roles.generator->prompts();
  auto trail = budget_trail(base.state);
  std::vector<std::string> notes;

  auto variant = [&](const std::string& name, auto set, auto check) {
    SearchConfig cfg = base_cfg;
    set(cfg.ablations);
    ScriptedRun run(bench);
    run.run(cfg);
    auto prompts = run.roles.generator->prompts();
    bool same_budget = budget_trail(run.state) == trail && run.state.executions == base.state.executions &&
                       run.state.remaining_budget == base.state.remaining_budget;
    c.expect(same_budget, name + " changed budget accounting");
    c.expect(prompts.size() == base_prompts.size(), name + " changed the number of generation calls");
    std::string diff = check(prompts, run.state);
    if (!diff.empty()) c.expect(false, name + ": " + diff);
    notes.push_back(name);
  };

  // Prompt 0 opens branch 1, prompts 1-3 refine it, prompt 4 opens branch 2.
  variant(
      "no_global", [](AblationFlags& f) { f.no_global = true; },
      [&](const std::vector<std::string>& p, const SearchState& s) -> std::string {
        if (p[4].find(kNoGlobalMemory) == std::string::npos) return "branch 2 proposer saw global memory";
        if (base_prompts[4].find(base.state.global_memory[0].algorithmic_design) == std::string::npos) {
          return "baseline branch 2 proposer lacks branch 1 entry";
        }
        if (!s.global_memory.empty()) return "global entries were written";
        return {};
      });
  variant(
      "no_branch_local", [](AblationFlags& f) { f.no_branch_local = true; },
      [&](const std::vector<std::string>& p, const SearchState&) -> std::string {
        if (occurrences(p[3], "(depth ") != 1) return "depth-4 refinement shows more than the parent";
        if (occurrences(base_prompts[3], "(depth ") != 3) return "baseline depth-4 refinement lacks full history";
        return {};
      });
  variant(
      "no_failed_nodes", [](AblationFlags& f) { f.no_failed_nodes = true; },
      [&](const std::vector<std::string>& p, const SearchState&) -> std::string {
        if (p[1].find(kNoBranchMemory) == std::string::npos) return "invalid depth-1 record still shown";
        if (base_prompts[1].find("(depth 1) Bug") == std::string::npos) return "baseline lacks the invalid record";
        return {};
      });
  variant(
      "flat_memory", [](AblationFlags& f) { f.flat_memory = true; },
      [&](const std::vector<std::string>& p, const SearchState& s) -> std::string {
        if (p[4].find("(depth 4)") == std::string::npos) return "branch 2 proposer lacks the shared history";
        if (p[5].find(s.branches[0].records()[0].pi) == std::string::npos) {
          return "branch 2 refinement lacks branch 1 records";
        }
        if (base_prompts[5].find(base.state.branches[0].records()[0].pi) != std::string::npos) {
          return "baseline refinement already shows branch 1";
        }
        if (!s.global_memory.empty()) return "global entries were written";
        return {};
      });
  return "4 ablations vs baseline: prompt context differs as documented, budget trail identical";
}

std::string global_bound(Check& c) {
  auto bench = testing::steiner_bench(5, 11);
  std::string detail;
  // Canned reflections, then unusable ones so every entry comes from the fallback.
  for (bool fallback : {false, true}) {
    ScriptedRun run(bench);
    // Unusable replies are re-asked, so the fallback run needs more of them.
    std::vector<std::string> reviews = fallback ? std::vector<std::string>(96, "not json") : testing::reviews(32);
    run.run(scripted_config(16, 4), reviews);
    const SearchState& s = run.state;
    std::size_t m = s.branches.size();
    c.expect(s.global_memory.size() == m, std::to_string(s.global_memory.size()) + " entries for " +
                                              std::to_string(m) + " branches");
    std::vector<std::string> forbidden;
    for (const auto& [ref, code] : s.store.sources()) {
      std::istringstream lines(code);
      for (std::string line; std::getline(lines, line);) {
        if (line.size() >= 16) forbidden.push_back(line);
      }
    }
    for (const Record* r : s.all_records()) {
      for (const ExecutionOutcome& o : r->E) {
        for (const std::string* log : {&o.stdout_log, &o.stderr_log}) {
          std::istringstream lines(*log);
          for (std::string line; std::getline(lines, line);) {
            if (line.size() >= 16) forbidden.push_back(line);
          }
        }
      }
    }
    int leaks = 0, empties = 0;
    for (const auto& g : s.global_memory) {
      for (const std::string* field : {&g.algorithmic_design, &g.failure_modes, &g.avoidance_directives}) {
        if (field->find_first_not_of(" \t\n") == std::string::npos) ++empties;
        for (const auto& bad : forbidden) leaks += field->find(bad) != std::string::npos ? 1 : 0;
      }
    }
    c.expect(empties == 0, std::to_string(empties) + " empty fields");
    c.expect(leaks == 0, std::to_string(leaks) + " code or log fragments in global memory");
    detail += std::string(fallback ? "; fallback reflections: " : "canned reflections: ") + std::to_string(m) +
              " branches, " + std::to_string(s.global_memory.size()) + " entries, " +
              std::to_string(forbidden.size()) + " fragments checked, 0 leaks";
  }
  return detail;
}

std::string stability(Check& c) {
  auto bench = testing::steiner_bench(5, 11);
  // The scripted solvers only answer the bench instances, so test on a copy of them.
  Dataset test = bench.dev;
  test.split = Split::Test;
  ScriptedRun run(bench);
  auto fresh = [&](int) {
    return testing::scripted_roles(testing::sixteen_generations(bench), testing::reviews(32)).roles;
  };
  StabilitySummary s = run_multi(run.problem, test, scripted_config(16, 4), run.env, 3, fresh);
  c.expect(s.runs.size() == 3, std::to_string(s.runs.size()) + " runs");
  c.expect(s.avg.mean > 0.0, "Avg mean is zero");
  c.expect(s.avg.stdev == 0.0, "Avg stdev " + std::to_string(s.avg.stdev));
  c.expect(s.valid.stdev == 0.0, "Valid stdev " + std::to_string(s.valid.stdev));
  return "3 runs, Avg " + fmt(s.avg.mean) + " +/- " + std::to_string(s.avg.stdev) + ", Valid " + fmt(s.valid.mean) +
         " +/- " + std::to_string(s.valid.stdev);
}

// ---------------------------------------------------------------------------

double exhaustive_peak(const PvrpInstance& in) {
  const std::size_t D = static_cast<std::size_t>(in.period_length);
  double best = INFINITY;
  std::vector<double> load(D, 0.0);
  std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == in.customers.size()) {
      double peak = 0.0;
      for (std::size_t d = 0; d < D; ++d) {
        if (load[d] > 0) peak = std::max(peak, load[d] / (in.vehicles_per_day[d] * in.vehicle_capacity));
      }
      best = std::min(best, peak);
      return;
    }
    for (const auto& s : in.customers[k].schedules) {
      for (std::size_t d = 0; d < D; ++d) load[d] += s[d] * in.customers[k].demand;
      walk(k + 1);
      for (std::size_t d = 0; d < D; ++d) load[d] -= s[d] * in.customers[k].demand;
    }
  };
  walk(0);
  return best;
}

std::string difficulty(Check& c) {
  AircraftLandingInstance a;
  a.num_runways = 2;
  for (int i = 0; i < 10; ++i) a.planes.push_back(Plane{0, 10, 20, 1, 1});
  a.separation.assign(10, std::vector<double>(10, 4.0));
  for (int i = 0; i < 10; ++i) a.separation[i][i] = 0;
  double da = difficulty_aircraft(a);
  c.expect(da == 1.0, "aircraft proxy " + std::to_string(da));

  PvrpInstance two;
  two.period_length = 2;
  two.vehicles_per_day = {1, 1};
  two.vehicle_capacity = 10;
  two.customers = {PvrpCustomer{{1, 1}, 6, {{1, 0}, {0, 1}}}, PvrpCustomer{{2, 2}, 3, {{1, 0}, {0, 1}}},
                   PvrpCustomer{{3, 3}, 2, {{1, 0}, {0, 1}}}};
  double dp = difficulty_pvrp(two);
  double ex = exhaustive_peak(two);
  c.expect(dp == ex, "pvrp proxy " + std::to_string(dp) + " vs exhaustive " + std::to_string(ex));
  int generated_mismatch = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    ProblemInstance inst = generate_instance(DomainId::PeriodicVehicleRouting, SizeClass::Small, seed);
    const auto& p = inst.as<PvrpInstance>();
    if (difficulty_pvrp(p) != exhaustive_peak(p)) ++generated_mismatch;
  }
  c.expect(generated_mismatch == 0, std::to_string(generated_mismatch) + " generated PVRP mismatches");

  std::vector<double> hardness;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 29; ++i) hardness.push_back(std::uniform_real_distribution<double>(0, 5)(rng));
  int counts[3] = {0, 0, 0};
  for (int b : tercile_bins(hardness)) ++counts[b];
  c.expect(counts[0] == 10 && counts[1] == 10 && counts[2] == 9, "tercile sizes wrong");
  return "aircraft " + format_number(da) + ", pvrp " + format_number(dp) + " = exhaustive " + format_number(ex) +
         ", terciles " + std::to_string(counts[0]) + "/" + std::to_string(counts[1]) + "/" + std::to_string(counts[2]);
}

}  // namespace

int main() {
  criterion("score properties", score_properties);
  criterion("evaluator-oracle equivalence", oracle_equivalence);
  criterion("steiner analytic check", steiner_analytic);
  criterion("deterministic end-to-end", end_to_end);
  criterion("repair sampling distribution", repair_sampling);
  criterion("executor timeout contract", executor_contract);
  criterion("ablation observability", ablations);
  criterion("global memory bound", global_bound);
  criterion("stability harness", stability);
  criterion("difficulty proxies", difficulty);
  std::cout << (failed_criteria == 0 ? "all criteria passed" : std::to_string(failed_criteria) + " criteria failed")
            << std::endl;
  return failed_criteria == 0 ? 0 : 1;
}
