#include <doctest.h>

#include "fixtures.hpp"
#include "heursynth/ops/operators.hpp"

using namespace heursynth;
using testing::error_kind;
using testing::make_record;
using testing::scripted_roles;
using testing::solver_reply;

namespace {

OperatorContext context(const OperatorRoleMap& roles, TokenLedger& ledger, std::vector<LlmCall>* calls = nullptr) {
  OperatorContext ctx;
  ctx.roles = &roles;
  ctx.ledger = &ledger;
  ctx.clock = [] { return 0.0; };
  if (calls) ctx.on_call = [calls](const LlmCall& c) { calls->push_back(c); };
  return ctx;
}

class ThrowingClient : public ChatModelClient {
 public:
  ChatReply complete(const std::string&) override { throw Error(ErrorKind::ClientError, "HTTP 401"); }
  const std::string& model_name() const override { return name_; }

 private:
  std::string name_ = "broken";
};

ExecutionOutcome failing(const std::string& id, const std::string& constraint, ExecStatus status) {
  ExecutionOutcome o;
  o.instance_id = id;
  o.status = status;
  o.evaluation = RawOutcome::fail(Violation{constraint, {id}, ""});
  o.stderr_log = std::string(5000, 'e') + "TAIL";
  return o;
}

}  // namespace

TEST_CASE("builtin templates bind exactly their placeholders") {
  std::map<std::string, std::string> all{
      {"task_description", "T"}, {"global_memory", "G"},  {"branch_memory", "B"},   {"previous_code", "C"},
      {"execution_output", "E"}, {"current_code", "CC"}, {"current_logs", "CL"},   {"parent_code", "PC"},
      {"previous_logs", "PL"},   {"trajectory_history", "H"}};
  for (TemplateId id : {TemplateId::Proposer, TemplateId::Improve, TemplateId::Debug, TemplateId::Critic,
                        TemplateId::Reflection}) {
    CAPTURE(template_name(id));
    std::string body(builtin_template(id));
    CHECK(!body.empty());
    std::string out = render_template(body, all);
    CHECK(out.find("{task_description}") == std::string::npos);
  }
}

TEST_CASE("render_template is single pass and strict") {
  CHECK(render_template("a {x} b", {{"x", "{y}"}}) == "a {y} b");
  CHECK(render_template("json {\"k\": 1} {x}", {{"x", "1"}}) == "json {\"k\": 1} 1");
  CHECK(error_kind([] { render_template("{missing}", {}); }) == ErrorKind::TemplateUnbound);
}

TEST_CASE("parse_solver_reply") {
  auto p = parse_solver_reply("Greedy sweep.\n\n```python\ndef solve(x):\n    yield {}\n```\ntrailing");
  REQUIRE(p);
  CHECK(p->sketch == "Greedy sweep.");
  CHECK(p->code == "def solve(x):\n    yield {}\n");
  std::string why;
  CHECK(!parse_solver_reply("no code at all", &why));
  CHECK(!why.empty());
  CHECK(!parse_solver_reply("sketch\n```python\nunterminated", &why));
  CHECK(!parse_solver_reply("sketch\n```python\nx = '```'\n", &why));
}

TEST_CASE("forbidden imports") {
  CHECK(forbidden_import("import ortools.linear_solver") == "ortools");
  CHECK(forbidden_import("from pulp import LpProblem") == "pulp");
  CHECK(forbidden_import("import numpy as np\nimport math") == std::nullopt);
  CHECK(forbidden_import("# mip is mentioned in a comment") == std::nullopt);
}

TEST_CASE("extract_json_object and digest") {
  auto j = extract_json_object("prefix {\"a\": \"}\", \"b\": {\"c\": 1}} suffix {\"z\": 2}");
  REQUIRE(j);
  CHECK((*j)["b"]["c"] == 1);
  CHECK(!extract_json_object("nothing here"));
  CHECK(digest("") == "cbf29ce484222325");
  CHECK(digest("a").size() == 16);
}

TEST_CASE("history labels") {
  Record parent = make_record("b1-d1", 1, 1, 1, 0.5);
  CHECK(record_label(make_record("b1-d2", 1, 2, 1, 0.7), &parent) == "No bugs, improved score");
  CHECK(record_label(make_record("b1-d2", 1, 2, 1, 0.3), &parent) == "No bugs, worsened score");
  CHECK(record_label(make_record("b1-d2", 1, 2, 1, 0.5), &parent) == "No change");
  CHECK(record_label(make_record("b1-d2", 1, 2, 0, 0.9), &parent) == "Bug");
  Record bug = make_record("b1-d3", 1, 3, 1, 0.9);
  bug.is_bug = true;
  CHECK(record_label(bug, &parent) == "Bug");

  Record child = make_record("b1-d2", 1, 2, 1, 0.7, 1, std::string("b1-d1"));
  std::vector<const Record*> rs{&parent, &child};
  std::string h = render_history(rs, rs);
  CHECK(h.find("(depth 2) No bugs, improved score") != std::string::npos);
  CHECK(h.find("sketch b1-d1") != std::string::npos);
  CHECK(render_history({}, {}) == kNoBranchMemory);
}

TEST_CASE("global memory rendering") {
  std::vector<GlobalMemoryEntry> g{make_global_entry(1, "greedy", "overlap", "sort first"),
                                   make_global_entry(2, "local search", "plateau", "perturb")};
  std::string out = render_global_memory(g);
  CHECK(out.find("Branch 1:") < out.find("Branch 2:"));
  CHECK(out.find("greedy") != std::string::npos);
  CHECK(out.find("perturb") != std::string::npos);
}

TEST_CASE("execution output shows failures first and caps excerpts") {
  std::vector<ExecutionOutcome> os;
  for (int i = 0; i < 7; ++i) {
    ExecutionOutcome ok;
    ok.instance_id = "ok" + std::to_string(i);
    ok.status = ExecStatus::Solved;
    ok.evaluation = RawOutcome::ok(1);
    ok.score = {1, 1.0};
    os.push_back(ok);
  }
  os.push_back(failing("bad", "overlap", ExecStatus::Solved));
  std::string out = render_execution_output(os);
  CHECK(out.rfind("Valid on 7 of 8 instances", 0) == 0);
  CHECK(out.find("bad") < out.find("ok0"));
  CHECK(out.find("overlap") != std::string::npos);
  CHECK(out.find("TAIL") != std::string::npos);
  CHECK(out.find(std::string(kLogExcerptBytes + 1, 'e')) == std::string::npos);
  CHECK(out.find("ok5") == std::string::npos);
  CHECK(out.find("more instances not shown") != std::string::npos);
}

TEST_CASE("generation re-asks then succeeds") {
  auto s = scripted_roles({"no fence here", solver_reply("Sweep.", "yield 1 {}\n")}, {});
  TokenLedger ledger;
  std::vector<LlmCall> calls;
  OperatorContext ctx = context(s.roles, ledger, &calls);
  GeneratedSolver g = propose(ctx, "TASK", std::string(kNoGlobalMemory));
  CHECK(g.sketch == "Sweep.");
  auto prompts = s.generator->prompts();
  REQUIRE(prompts.size() == 2);
  CHECK(prompts[0].find("TASK") != std::string::npos);
  CHECK(prompts[0].find(kNoGlobalMemory) != std::string::npos);
  CHECK(prompts[1].rfind(prompts[0], 0) == 0);
  CHECK(prompts[1].find("could not be used") != std::string::npos);
  auto entries = ledger.entries();
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].outcome == "parse-failure");
  CHECK(entries[1].outcome == "ok");
  CHECK(entries[0].approximate);
  CHECK(entries[0].role == "propose");
  REQUIRE(calls.size() == 2);
  CHECK(calls[1].attempt == 1);
  CHECK(calls[0].prompt_digest == digest(prompts[0]));
}

TEST_CASE("generation fails after the re-ask budget") {
  auto s = scripted_roles({"x", "y", solver_reply("s", "import gurobipy\n")}, {});
  TokenLedger ledger;
  OperatorContext ctx = context(s.roles, ledger);
  CHECK(error_kind([&] { propose(ctx, "T", "G"); }) == ErrorKind::ParseFailure);
  CHECK(ledger.entries().size() == 3);
}

TEST_CASE("client errors are recorded then rethrown") {
  auto broken = std::make_shared<ThrowingClient>();
  OperatorRoleMap roles = OperatorRoleMap::single(broken);
  TokenLedger ledger;
  OperatorContext ctx = context(roles, ledger);
  CHECK(error_kind([&] { propose(ctx, "T", "G"); }) == ErrorKind::ClientError);
  REQUIRE(ledger.entries().size() == 1);
  CHECK(ledger.entries()[0].outcome == "client-error");
  CHECK(ledger.entries()[0].output_tokens == 0);

  auto s = scripted_roles({}, {});
  OperatorContext empty = context(s.roles, ledger);
  CHECK(error_kind([&] { propose(empty, "T", "G"); }) == ErrorKind::ScriptExhausted);
}

TEST_CASE("repair and improve prompts carry the parent") {
  Record parent = make_record("b1-d1", 1, 1, 0, 0.2);
  auto s = scripted_roles({solver_reply("fix", "a\n"), solver_reply("tune", "b\n")}, {});
  TokenLedger ledger;
  OperatorContext ctx = context(s.roles, ledger);
  repair(ctx, "T", parent, "PARENT_CODE", "HISTORY");
  Record valid = make_record("b2-d1", 2, 1, 1, 0.6);
  improve(ctx, "T", valid, "VALID_CODE", "HISTORY2");
  auto prompts = s.generator->prompts();
  CHECK(prompts[0].find("PARENT_CODE") != std::string::npos);
  CHECK(prompts[0].find("Valid on 0 of 1") != std::string::npos);
  CHECK(prompts[1].find("VALID_CODE") != std::string::npos);
  CHECK(prompts[1].find("HISTORY2") != std::string::npos);
  CHECK(ledger.entries()[0].role == "repair");
  CHECK(ledger.entries()[1].role == "improve");
}

TEST_CASE("critic parses or falls back") {
  std::vector<ExecutionOutcome> os{failing("a", "overlap", ExecStatus::Solved),
                                   failing("b", "overlap", ExecStatus::Solved),
                                   failing("c", "no-solution", ExecStatus::TimeoutNoYield)};
  std::string code = "CODE";
  auto s = scripted_roles({}, {R"({"is_bug": true, "summary": "off by one"})", "nope", "nope", "nope"});
  TokenLedger ledger;
  OperatorContext ctx = context(s.roles, ledger);
  Diagnostic d = critic(ctx, "T", CriticSide{&code, os}, std::nullopt);
  CHECK(d.is_bug);
  CHECK(d.summary == "off by one");
  CHECK(!d.fallback);
  CHECK(s.reviewer->prompts()[0].find(kInitialDraftCode) != std::string::npos);
  CHECK(s.reviewer->prompts()[0].find(kInitialDraftLogs) != std::string::npos);

  Diagnostic f = critic(ctx, "T", CriticSide{&code, os}, CriticSide{&code, os});
  CHECK(f.fallback);
  CHECK(f.summary == fallback_diagnostic(os).summary);
  CHECK(f.summary == "Valid on 0 of 3 instances. Most frequent failure: overlap (2 instances).");
  CHECK(f.is_bug);
}

TEST_CASE("fallback diagnostic treats timeouts as non-bugs") {
  std::vector<ExecutionOutcome> os{failing("a", "no-solution", ExecStatus::TimeoutNoYield)};
  CHECK(!fallback_diagnostic(os).is_bug);
}

TEST_CASE("reflect parses or falls back") {
  Record a = make_record("b1-d1", 1, 1, 0, 0.0);
  Record b = make_record("b1-d2", 1, 2, 1, 0.4);
  b.pi = "Greedy by angle\nwith details";
  std::vector<const Record*> rs{&a, &b};
  auto s = scripted_roles({}, {testing::review_reply("x"), "{}", "{}", "{}"});
  TokenLedger ledger;
  OperatorContext ctx = context(s.roles, ledger);
  GlobalMemoryEntry e = reflect(ctx, 1, "H", rs);
  CHECK(e.algorithmic_design == "design x");
  CHECK(e.avoidance_directives == "avoid x");
  GlobalMemoryEntry f = reflect(ctx, 2, "H", rs);
  CHECK(f == fallback_reflection(2, rs));
  CHECK(f.algorithmic_design == "Greedy by angle");
  CHECK(f.failure_modes == "Most frequent failure: no-solution (1 instances).");
  CHECK(error_kind([&] { reflect(ctx, 3, "H", {}); }) == ErrorKind::EmptyMemory);
}

TEST_CASE("role map completeness") {
  OperatorRoleMap partial;
  CHECK(!partial.complete());
  CHECK(error_kind([&] { partial.client(Role::Critic); }) == ErrorKind::InvalidConfig);
  auto s = scripted_roles({}, {});
  CHECK(s.roles.complete());
}
