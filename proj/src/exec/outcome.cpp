#include "heursynth/exec/outcome.hpp"

#include "heursynth/common/error.hpp"
#include "heursynth/eval/score.hpp"
#include "heursynth/problem/serialize.hpp"

namespace heursynth {

std::string_view status_name(ExecStatus status) {
  switch (status) {
    case ExecStatus::Solved: return "solved";
    case ExecStatus::Crashed: return "crashed";
    case ExecStatus::YieldedNothing: return "yielded-nothing";
    case ExecStatus::TimeoutNoYield: return "timeout-no-yield";
  }
  return "unknown";
}

std::optional<ExecStatus> parse_status(std::string_view name) {
  for (ExecStatus s : {ExecStatus::Solved, ExecStatus::Crashed, ExecStatus::YieldedNothing,
                       ExecStatus::TimeoutNoYield}) {
    if (status_name(s) == name) return s;
  }
  return std::nullopt;
}

ExecutionReport aggregate(std::vector<ExecutionOutcome> outcomes) {
  if (outcomes.empty()) throw Error(ErrorKind::DatasetEmpty, "no outcomes to aggregate");
  ExecutionReport report;
  report.v = 1;
  for (const ExecutionOutcome& o : outcomes) {
    report.per_instance_scores.push_back(o.score);
    if (!o.clean()) report.v = 0;
  }
  report.f = dataset_metrics(report.per_instance_scores).mean_score;
  report.outcomes = std::move(outcomes);
  return report;
}

Json violation_to_json(const std::optional<Violation>& v) {
  if (!v) return nullptr;
  return Json{{"constraint", v->constraint}, {"entities", v->entities}, {"detail", v->detail}};
}

Json outcome_to_json(const ExecutionOutcome& o) {
  Json j;
  j["instance_id"] = o.instance_id;
  j["status"] = status_name(o.status);
  j["yield_count"] = o.yield_count;
  j["last_solution"] = o.last_solution ? solution_to_json(*o.last_solution) : Json(nullptr);
  j["feasible"] = o.evaluation.feasible;
  j["objective"] = o.evaluation.objective ? Json(*o.evaluation.objective) : Json(nullptr);
  j["violation"] = violation_to_json(o.evaluation.violation);
  j["valid"] = o.score.valid;
  j["score"] = o.score.score;
  j["wall_time"] = o.wall_time;
  j["stdout"] = o.stdout_log;
  j["stderr"] = o.stderr_log;
  return j;
}

ExecutionOutcome outcome_from_json(DomainId domain, const Json& j) {
  try {
    ExecutionOutcome o;
    o.instance_id = j.at("instance_id").get<std::string>();
    auto status = parse_status(j.at("status").get<std::string>());
    if (!status) throw Error(ErrorKind::CorruptArtifact, "unknown status in outcome " + o.instance_id);
    o.status = *status;
    o.yield_count = j.at("yield_count").get<int>();
    if (!j.at("last_solution").is_null()) {
      SolutionParse parsed = parse_solution(domain, j.at("last_solution"));
      if (!parsed.solution) throw Error(ErrorKind::CorruptArtifact, "bad stored solution: " + parsed.error);
      o.last_solution = parsed.solution;
    }
    o.evaluation.feasible = j.at("feasible").get<bool>();
    if (!j.at("objective").is_null()) o.evaluation.objective = j.at("objective").get<double>();
    if (const Json& v = j.at("violation"); !v.is_null()) {
      o.evaluation.violation = Violation{v.at("constraint").get<std::string>(),
                                         v.at("entities").get<std::vector<std::string>>(),
                                         v.at("detail").get<std::string>()};
    }
    o.score = {j.at("valid").get<int>(), j.at("score").get<double>()};
    o.wall_time = j.at("wall_time").get<double>();
    o.stdout_log = j.at("stdout").get<std::string>();
    o.stderr_log = j.at("stderr").get<std::string>();
    return o;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::CorruptArtifact, std::string("outcome: ") + e.what());
  }
}

}  // namespace heursynth
