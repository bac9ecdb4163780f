#include <doctest.h>

#include "fixtures.hpp"
#include "heursynth/search/search.hpp"

using namespace heursynth;
using testing::error_kind;
using testing::make_record;

namespace {

BranchLocalMemory branch(std::vector<std::pair<int, double>> vf) {
  BranchLocalMemory m(1);
  int depth = 1;
  for (auto [v, f] : vf) {
    std::optional<std::string> parent;
    if (depth > 1) parent = "b1-d1";
    m.append(make_record("b1-d" + std::to_string(depth), 1, depth, v, f, depth, parent));
    ++depth;
  }
  return m;
}

struct Harness {
  testing::SteinerBench bench = testing::steiner_bench(5, 11);
  testing::ScriptedRoles roles;
  InProcessBackend backend;
  Problem problem;
  SearchEnv env;

  Harness() {
    problem.domain = DomainId::EuclideanSteiner;
    problem.description = "Place Steiner points to shorten the tree.";
    problem.dev = bench.dev;
    env.backend = &backend;
    env.llm_clock = [] { return 0.0; };
  }

  void script(std::vector<std::string> gens, std::vector<std::string> revs) {
    roles = testing::scripted_roles(std::move(gens), std::move(revs));
    env.roles = &roles.roles;
  }
  void script_default(int reviews = 24) { script(testing::sixteen_generations(bench), testing::reviews(reviews)); }

  // Every generation yields the same valid solver with `good` best-candidate instances.
  void script_constant(int count, int good) {
    std::vector<std::string> gens(static_cast<std::size_t>(count),
                                  testing::solver_reply("Same idea", testing::bench_script(bench, good)));
    script(gens, testing::reviews(2 * count));
  }
};

SearchConfig never(int budget, int depth_cap) {
  SearchConfig c;
  c.budget = budget;
  c.depth_cap = depth_cap;
  c.stop_rule = StopRule::Never;
  c.parallelism = 1;
  return c;
}

std::vector<Json> events(const SearchState& s, const std::string& name) {
  std::vector<Json> out;
  for (const Json& e : s.trace) {
    if (e["event"] == name) out.push_back(e);
  }
  return out;
}

}  // namespace

TEST_CASE("improvement_expected") {
  CHECK(improvement_expected(branch({{0, 0.1}, {0, 0.2}, {0, 0.3}}), 2));
  CHECK(improvement_expected(branch({{1, 0.5}, {1, 0.5}}), 2));
  CHECK(!improvement_expected(branch({{1, 0.5}, {1, 0.5}, {1, 0.5}}), 2));
  CHECK(!improvement_expected(branch({{1, 0.5}, {1, 0.502}, {1, 0.504}}), 2));
  CHECK(improvement_expected(branch({{1, 0.5}, {1, 0.49}, {1, 0.51}}), 2));
  CHECK(improvement_expected(branch({{0, 0.1}, {0, 0.2}, {1, 0.3}}), 2));
  CHECK(!improvement_expected(branch({{1, 0.6}, {0, 0.9}, {1, 0.2}}), 2));
}

TEST_CASE("config validation and json") {
  SearchConfig c;
  CHECK_NOTHROW(c.validate());
  c.budget = 0;
  CHECK(error_kind([&] { c.validate(); }) == ErrorKind::InvalidConfig);
  c = SearchConfig{};
  c.timeout = 0;
  CHECK(error_kind([&] { c.validate(); }) == ErrorKind::InvalidConfig);
  c = SearchConfig{};
  c.ablations.no_branch_local = c.ablations.flat_memory = true;
  CHECK(error_kind([&] { c.validate(); }) == ErrorKind::InvalidConfig);

  SearchConfig d = never(12, 3);
  d.ablations.no_failed_nodes = true;
  d.rng_seed = 99;
  CHECK(search_config_from_json(search_config_to_json(d)) == d);
  CHECK(search_config_from_json(Json::object()) == SearchConfig{});
}

TEST_CASE("budget of one cannot open a branch") {
  Harness h;
  h.script({}, {});
  SearchState state;
  CHECK(error_kind([&] { run_search(h.problem, never(1, 5), h.env, state); }) == ErrorKind::EmptySearch);
  CHECK(state.executions == 0);
  CHECK(state.stranded_budget == 1);
}

TEST_CASE("sixteen executions over four full branches") {
  Harness h;
  h.script_default();
  SearchState state;
  SearchResult r = run_search(h.problem, never(16, 4), h.env, state);
  CHECK(state.executions == 16);
  CHECK(state.remaining_budget == 0);
  CHECK(state.stranded_budget == 0);
  REQUIRE(state.branches.size() == 4);
  for (const auto& b : state.branches) CHECK(b.records().size() == 4);
  CHECK(state.global_memory.size() == 4);
  CHECK(h.roles.generator->remaining() == 0);
  CHECK(h.roles.reviewer->remaining() == 4);

  for (const Json& e : state.trace) {
    CHECK(e["budget_remaining"].get<int>() + e["executions"].get<int>() == 16);
  }
  for (std::size_t i = 0; i < state.trace.size(); ++i) CHECK(state.trace[i]["seq"] == i);

  // Mode follows the branch state before each step.
  for (const auto& b : state.branches) {
    bool seen_valid = false;
    for (const Record& rec : b.records()) {
      auto ex = std::find_if(state.trace.begin(), state.trace.end(),
                             [&](const Json& e) { return e["event"] == "execute" && e["record_id"] == rec.record_id; });
      REQUIRE(ex != state.trace.end());
      std::string mode = (*ex)["mode"];
      if (rec.depth == 1) {
        CHECK(mode == "propose");
      } else {
        CHECK(mode == (seen_valid ? "improve" : "repair"));
      }
      seen_valid = seen_valid || rec.v == 1;
    }
  }

  const Record* best = nullptr;
  for (const Record* rec : state.all_records()) {
    if (rec->v == 1 && (!best || rec->f > best->f)) best = rec;
  }
  REQUIRE(best);
  CHECK(r.selected.record_id == best->record_id);
  CHECK(r.source == state.store.get(best->solver_ref));
  CHECK(events(state, "final").size() == 1);
}

TEST_CASE("depth cap five leaves one unit stranded") {
  Harness h;
  h.script_default();
  SearchState state;
  run_search(h.problem, never(16, 5), h.env, state);
  CHECK(state.branches.size() == 3);
  CHECK(state.executions == 15);
  CHECK(state.stranded_budget == 1);
  CHECK(events(state, "stranded").size() == 1);
}

TEST_CASE("budget runs out mid branch") {
  Harness h;
  h.script_default();
  SearchState state;
  run_search(h.problem, never(7, 5), h.env, state);
  CHECK(state.executions == 7);
  REQUIRE(state.branches.size() == 2);
  CHECK(state.branches[1].records().size() == 2);
  CHECK(events(state, "branch-end").back()["reason"] == "budget");
}

TEST_CASE("stagnation ends a branch early") {
  Harness h;
  h.script_constant(6, 2);
  SearchConfig c = never(6, 5);
  c.stop_rule = StopRule::Stagnation;
  SearchState state;
  run_search(h.problem, c, h.env, state);
  REQUIRE(state.branches.size() == 2);
  CHECK(state.branches[0].records().size() == 3);
  CHECK(events(state, "branch-end")[0]["reason"] == "stagnation");
  CHECK(state.executions == 6);
}

TEST_CASE("an operator error aborts with state kept") {
  Harness h;
  h.script({testing::sixteen_generations(h.bench)[0], testing::sixteen_generations(h.bench)[1]}, testing::reviews(8));
  SearchState state;
  std::vector<std::string> seen;
  h.env.on_trace = [&](const Json& e) { seen.push_back(e["event"]); };
  CHECK(error_kind([&] { run_search(h.problem, never(16, 5), h.env, state); }) == ErrorKind::ScriptExhausted);
  CHECK(state.executions == 2);
  CHECK(state.all_records().size() == 2);
  CHECK(state.trace.back()["event"] == "abort");
  CHECK(seen.back() == "abort");
  CHECK(state.ledger.entries().back().outcome == "client-error");
}

TEST_CASE("no global memory ablation") {
  Harness h;
  h.script_default();
  SearchConfig c = never(4, 2);
  c.ablations.no_global = true;
  SearchState state;
  run_search(h.problem, c, h.env, state);
  CHECK(state.global_memory.empty());
  CHECK(events(state, "reflect").empty());
  auto prompts = h.roles.generator->prompts();
  CHECK(prompts[2].find(kNoGlobalMemory) != std::string::npos);
  CHECK(h.roles.reviewer->prompts().size() == 4);
}

TEST_CASE("global memory reaches the next proposer") {
  Harness h;
  h.script_default();
  SearchState state;
  run_search(h.problem, never(4, 2), h.env, state);
  REQUIRE(state.global_memory.size() == 2);
  auto prompts = h.roles.generator->prompts();
  CHECK(prompts[2].find(state.global_memory[0].algorithmic_design) != std::string::npos);
}

TEST_CASE("flat memory shares one history") {
  Harness h;
  h.script_default();
  SearchConfig c = never(4, 2);
  c.ablations.flat_memory = true;
  SearchState state;
  run_search(h.problem, c, h.env, state);
  CHECK(state.global_memory.empty());
  auto prompts = h.roles.generator->prompts();
  CHECK(prompts[0].find(kNoGlobalMemory) != std::string::npos);
  CHECK(prompts[2].find("(depth 2)") != std::string::npos);
  CHECK(prompts[3].find(state.branches[0].records()[0].pi) != std::string::npos);
}

TEST_CASE("no failed nodes hides invalid records from refinement") {
  Harness h;
  h.script_default();
  SearchConfig c = never(3, 3);
  c.ablations.no_failed_nodes = true;
  SearchState state;
  run_search(h.problem, c, h.env, state);
  const auto& recs = state.branches[0].records();
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].v == 0);
  CHECK(recs[1].v == 0);
  auto prompts = h.roles.generator->prompts();
  CHECK(prompts[1].find(kNoBranchMemory) != std::string::npos);
  CHECK(prompts[2].find(recs[1].pi) == std::string::npos);
}

TEST_CASE("repeated runs with fixed scripts agree") {
  Harness h;
  h.script_default();
  // The scripted solvers only answer the bench instances, so test on a copy of them.
  Dataset test = h.bench.dev;
  test.split = Split::Test;
  auto fresh = [&](int) {
    return testing::scripted_roles(testing::sixteen_generations(h.bench), testing::reviews(24)).roles;
  };
  StabilitySummary s = run_multi(h.problem, test, never(8, 4), h.env, 3, fresh);
  CHECK(s.runs.size() == 3);
  CHECK(s.avg.mean > 0.0);
  CHECK(s.avg.stdev == 0.0);
  CHECK(s.valid.stdev == 0.0);
  CHECK(error_kind([&] { run_multi(h.problem, test, never(8, 4), h.env, 1, fresh); }) == ErrorKind::InvalidConfig);
  MetricStats m = population_stats({1, 3});
  CHECK(m.mean == 2.0);
  CHECK(m.stdev == 1.0);
}
