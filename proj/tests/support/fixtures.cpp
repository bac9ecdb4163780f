#include "fixtures.hpp"

#include "heursynth/eval/evaluate.hpp"
#include "heursynth/eval/oracle.hpp"
#include "heursynth/problem/generate.hpp"
#include "heursynth/problem/serialize.hpp"

namespace heursynth::testing {

SteinerBench steiner_bench(int count, std::uint64_t seed, Split split) {
  SteinerBench bench;
  bench.dev.domain = DomainId::EuclideanSteiner;
  bench.dev.split = split;
  for (std::uint64_t s = seed; static_cast<int>(bench.dev.instances.size()) < count; ++s) {
    ProblemInstance instance = generate_instance(DomainId::EuclideanSteiner, SizeClass::Small, s);
    std::optional<CandidateSolution> best;
    double best_value = 0.0;
    enumerate_oracle_candidates(instance, [&](const CandidateSolution& c, const OracleVerdict& v) {
      if (v.feasible && v.objective > best_value) {
        best = c;
        best_value = v.objective;
      }
    });
    if (!best || best_value < 1e-3) continue;
    instance.reference_objective = evaluate(instance, *best).objective;
    bench.dev.instances.push_back(instance);
    bench.witnesses.push_back(*best);
  }
  return bench;
}

std::string bench_script(const SteinerBench& bench, int good, bool valid) {
  std::string out = "# fake solver\n";
  int n = static_cast<int>(bench.dev.instances.size());
  for (int i = 0; i < n; ++i) {
    const std::string& id = bench.dev.instances[i].instance_id;
    if (!valid && i == n - 1) continue;
    std::string body = i < good ? solution_to_json(bench.witnesses[i]).dump() : R"({"steiner_points":[]})";
    out += "yield 0.5 @" + id + " " + body + "\n";
  }
  return out;
}

std::string solver_reply(const std::string& sketch, const std::string& code) {
  return sketch + "\n\n```text\n" + code + "```\n";
}

std::string review_reply(const std::string& tag) {
  return "Here is my assessment.\n{\"is_bug\": false, \"summary\": \"review " + tag +
         "\", \"algorithmic design\": \"design " + tag + "\", \"failure and stagnation reason\": \"plateau " + tag +
         "\", \"constraint\": \"avoid " + tag + "\"}\n";
}

ScriptedRoles scripted_roles(std::vector<std::string> generation, std::vector<std::string> reviews,
                             const std::string& gen_model, const std::string& rev_model) {
  ScriptedRoles r;
  r.generator = std::make_shared<ScriptedClient>(gen_model, std::move(generation));
  r.reviewer = std::make_shared<ScriptedClient>(rev_model, std::move(reviews));
  r.roles = OperatorRoleMap::split(r.generator, r.reviewer);
  return r;
}

std::vector<std::string> sixteen_generations(const SteinerBench& bench) {
  int n = static_cast<int>(bench.dev.instances.size());
  // (good, valid) per call; branch structure comes from the search, not this list.
  const std::pair<int, bool> plan[16] = {{0, false}, {1, false}, {1, true},  {2, true},
                                         {1, true},  {1, true},  {3, true},  {n, true},
                                         {0, false}, {0, false}, {0, false}, {2, false},
                                         {2, true},  {2, true},  {1, true},  {3, true}};
  std::vector<std::string> out;
  for (int i = 0; i < 16; ++i) {
    int good = std::min(plan[i].first, n);
    out.push_back(solver_reply("Sketch " + std::to_string(i) + ": greedy points, variant " + std::to_string(i),
                               bench_script(bench, good, plan[i].second)));
  }
  return out;
}

std::vector<std::string> reviews(int count) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(review_reply(std::to_string(i)));
  return out;
}

Record make_record(const std::string& id, int branch, int depth, int v, double f, int created,
                   std::optional<std::string> parent) {
  ExecutionOutcome o;
  o.instance_id = "i0";
  o.status = v ? ExecStatus::Solved : ExecStatus::Crashed;
  o.evaluation = v ? RawOutcome::ok(f) : RawOutcome::fail(Violation{"no-solution", {"i0"}, "crashed"});
  o.score = InstanceScore{v, f};
  Record r;
  r.record_id = id;
  r.branch_id = branch;
  r.depth = depth;
  r.pi = "sketch " + id;
  r.rho = "diagnostic " + id;
  r.v = v;
  r.f = f;
  r.E = {o};
  r.parent_record_id = depth > 1 && !parent ? std::optional<std::string>("p-" + id) : parent;
  r.solver_ref = id + ".py";
  r.created = created;
  return r;
}

}  // namespace heursynth::testing
