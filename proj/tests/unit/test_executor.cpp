#include <doctest.h>

#include <chrono>

#include "fixtures.hpp"
#include "heursynth/exec/executor.hpp"
#include "heursynth/problem/serialize.hpp"

using namespace heursynth;
using testing::error_kind;

namespace {

// One plane, target 10, penalty 10 per unit late; reference 10 means landing at
// 11 scores 1.0 and landing at 12 scores 0.5.
ProblemInstance plane(const std::string& id) {
  Json entry = Json::parse(R"({"payload": {"num_planes": 1, "num_runways": 1,
    "planes": [{"earliest": 0, "target": 10, "latest": 20, "penalty_early": 1, "penalty_late": 10}],
    "separation": [[0]]}, "reference_objective": 10})");
  entry["instance_id"] = id;
  return instance_from_json(DomainId::AircraftLanding, entry);
}

Dataset planes(int n) {
  Dataset ds{DomainId::AircraftLanding, Split::Dev, {}};
  for (int i = 0; i < n; ++i) ds.instances.push_back(plane("p" + std::to_string(i)));
  return ds;
}

std::string land(double t) {
  return R"({"schedule": {"1": {"landing_time": )" + std::to_string(t) + R"(, "runway": 1}}})";
}

ExecutorConfig config(double timeout, int parallelism = 1) {
  ExecutorConfig c;
  c.timeout = timeout;
  c.parallelism = parallelism;
  return c;
}

SubprocessBackend shell() {
  SandboxConfig sc;
  sc.network_isolation = false;
  return SubprocessBackend({"/bin/sh"}, sandbox_policy(sc));
}

}  // namespace

TEST_CASE("last yield before the deadline wins") {
  InProcessBackend backend;
  std::string script = "yield 1 " + land(12) + "\nyield 3 " + land(11) + "\nyield 10.5 " + land(10) + "\nsleep 30\n";
  ExecutionReport r = execute_solver(script, planes(1), backend, config(10));
  const ExecutionOutcome& o = r.outcomes[0];
  CHECK(o.status == ExecStatus::Solved);
  CHECK(o.yield_count == 2);
  CHECK(o.score == InstanceScore{1, 1.0});
  CHECK(o.wall_time <= 11.0);
  CHECK(o.stderr_log.find("after the deadline") != std::string::npos);
}

TEST_CASE("statuses without a usable yield") {
  InProcessBackend backend;
  ExecutionOutcome crashed = execute_solver("crash\n", planes(1), backend, config(10)).outcomes[0];
  CHECK(crashed.status == ExecStatus::Crashed);
  CHECK(crashed.score == InstanceScore{0, 0.0});
  CHECK(crashed.evaluation.violation->constraint == "no-solution");

  CHECK(execute_solver("exit 0\n", planes(1), backend, config(10)).outcomes[0].status == ExecStatus::YieldedNothing);
  CHECK(execute_solver("sleep 40\n", planes(1), backend, config(10)).outcomes[0].status == ExecStatus::TimeoutNoYield);
  CHECK(execute_solver("bogus\n", planes(1), backend, config(10)).outcomes[0].status == ExecStatus::Crashed);
}

TEST_CASE("crash after a yield keeps the yield unless strict") {
  InProcessBackend backend;
  std::string script = "yield 1 " + land(11) + "\ncrash 2\n";
  CHECK(execute_solver(script, planes(1), backend, config(10)).outcomes[0].status == ExecStatus::Solved);
  ExecutorConfig strict = config(10);
  strict.strict_crash_voids_yields = true;
  CHECK(execute_solver(script, planes(1), backend, strict).outcomes[0].status == ExecStatus::Crashed);
}

TEST_CASE("malformed and out of order lines are skipped") {
  InProcessBackend backend;
  std::string script = "yield 1 " + land(11) + "\nemit 2 not json\nemit 3 {\"seq\": 1, \"solution\": " + land(12) +
                       "}\nemit 4 {\"seq\": 9, \"solution\": {\"schedule\": 5}}\n";
  ExecutionOutcome o = execute_solver(script, planes(1), backend, config(10)).outcomes[0];
  CHECK(o.score.score == 1.0);
  CHECK(o.stderr_log.find("malformed solution line") != std::string::npos);
  CHECK(o.stderr_log.find("non-increasing seq") != std::string::npos);
  CHECK(o.stderr_log.find("unparseable solution") != std::string::npos);
}

TEST_CASE("partial validity keeps a positive mean") {
  InProcessBackend backend;
  std::string script = "yield 1 @p0 " + land(11) + "\nyield 1 @p1 " + land(12) + "\nyield 1 @p2 " + land(30) + "\n";
  ExecutionReport r = execute_solver(script, planes(3), backend, config(10));
  CHECK(r.v == 0);
  CHECK(r.f == doctest::Approx(0.5));
  CHECK(r.outcomes[2].evaluation.violation->constraint == "time-window");
}

TEST_CASE("parallelism does not change results") {
  InProcessBackend backend;
  std::string script = "yield 1 @p3 " + land(12) + "\nyield 2 @p5 " + land(11) + "\nsleep 4\n";
  ExecutionReport one = execute_solver(script, planes(12), backend, config(10, 1));
  ExecutionReport eight = execute_solver(script, planes(12), backend, config(10, 8));
  CHECK(one == eight);
  REQUIRE(one.outcomes.size() == 12);
  CHECK(one.outcomes[3].instance_id == "p3");
}

TEST_CASE("logs are capped with a marker") {
  std::string big;
  append_capped(big, std::string(300, 'x'), 100);
  CHECK(big.size() == 100 + kTruncationMarker.size());
  append_capped(big, "more", 100);
  CHECK(big.size() == 100 + kTruncationMarker.size());

  InProcessBackend backend(64);
  std::string script;
  for (int i = 0; i < 20; ++i) script += "emit 0 some chatter on stdout\n";
  ExecutionOutcome o = execute_solver(script, planes(1), backend, config(10)).outcomes[0];
  CHECK(o.stdout_log.find(kTruncationMarker) != std::string::npos);
}

TEST_CASE("executor preconditions") {
  InProcessBackend backend;
  Dataset empty{DomainId::AircraftLanding, Split::Dev, {}};
  CHECK(error_kind([&] { execute_solver("exit 0", empty, backend, config(1)); }) == ErrorKind::DatasetEmpty);
  Dataset bare = planes(1);
  bare.instances[0].reference_objective.reset();
  CHECK(error_kind([&] { execute_solver("exit 0", bare, backend, config(1)); }) == ErrorKind::MissingReference);
  CHECK(error_kind([] { SubprocessBackend({"no-such-runtime-xyz"}, SandboxPolicy{}); }) == ErrorKind::ShimUnavailable);
}

TEST_CASE("sandbox policy") {
  SandboxConfig sc;
  if (platform_supports_isolation()) {
    CHECK(sandbox_policy(sc).isolate_network);
  } else {
    CHECK(error_kind([&] { sandbox_policy(sc); }) == ErrorKind::PolicyUnsupported);
    sc.insecure_override = true;
    CHECK(!sandbox_policy(sc).isolate_network);
  }
  sc.network_isolation = false;
  CHECK(!sandbox_policy(sc).isolate_network);
}

TEST_CASE("subprocess worker honors the deadline") {
  SubprocessBackend backend = shell();
  std::string script = "echo '{\"seq\": 1, \"solution\": " + land(12) + "}'\nsleep 0.3\necho '{\"seq\": 2, \"solution\": " +
                       land(11) + "}'\nsleep 30\n";
  auto start = std::chrono::steady_clock::now();
  ExecutionOutcome o = execute_solver(script, planes(1), backend, config(1.5)).outcomes[0];
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(o.status == ExecStatus::Solved);
  CHECK(o.yield_count == 2);
  CHECK(o.score.score == 1.0);
  CHECK(wall <= 1.5 + kDefaultGrace + 0.5);
}

TEST_CASE("subprocess crash and silent exit") {
  SubprocessBackend backend = shell();
  ExecutionOutcome crash = execute_solver("echo boom >&2\nexit 3\n", planes(1), backend, config(5)).outcomes[0];
  CHECK(crash.status == ExecStatus::Crashed);
  CHECK(crash.stderr_log.find("boom") != std::string::npos);
  CHECK(execute_solver("exit 0\n", planes(1), backend, config(5)).outcomes[0].status == ExecStatus::YieldedNothing);
}

TEST_CASE("subprocess stdout flood is truncated") {
  SandboxConfig sc;
  sc.network_isolation = false;
  sc.log_cap_bytes = 4096;
  SubprocessBackend backend({"/bin/sh"}, sandbox_policy(sc));
  ExecutionOutcome o =
      execute_solver("head -c 20000000 /dev/zero | tr '\\0' 'a'\n", planes(1), backend, config(10)).outcomes[0];
  CHECK(o.stdout_log.size() == 4096 + kTruncationMarker.size());
  CHECK(o.status == ExecStatus::YieldedNothing);
}

TEST_CASE("subprocess worker receives instance and deadline") {
  SubprocessBackend backend = shell();
  std::string script = "test -f \"$1\" || exit 4\ncase \"$2\" in *[0-9]*) ;; *) exit 5;; esac\n"
                       "echo '{\"seq\": 1, \"solution\": " + land(11) + "}'\n";
  ExecutionOutcome o = execute_solver(script, planes(1), backend, config(5)).outcomes[0];
  CHECK(o.status == ExecStatus::Solved);
}
