#include "heursynth/report/report.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

#include "heursynth/common/error.hpp"
#include "heursynth/eval/difficulty.hpp"

namespace heursynth {

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<ConvergenceRow> convergence_rows(const std::vector<Record>& records) {
  std::vector<ConvergenceRow> rows;
  const Record* incumbent = nullptr;
  std::optional<double> best_valid;
  double best_any = 0.0;
  int last_branch = -1;
  auto better = [](const Record& a, const Record& b) {
    if (a.v != b.v) return a.v > b.v;
    return a.f > b.f;
  };
  for (const Record& r : records) {
    if (!incumbent || better(r, *incumbent)) incumbent = &r;
    if (r.v == 1) best_valid = std::max(best_valid.value_or(r.f), r.f);
    best_any = rows.empty() ? r.f : std::max(best_any, r.f);
    ConvergenceRow row;
    row.execution = static_cast<int>(rows.size()) + 1;
    row.record_id = r.record_id;
    row.branch_id = r.branch_id;
    row.depth = r.depth;
    row.branch_start = r.branch_id != last_branch;
    row.v = r.v;
    row.f = r.f;
    row.incumbent_id = incumbent->record_id;
    row.incumbent_v = incumbent->v;
    row.incumbent_f = incumbent->f;
    row.best_valid_f = best_valid;
    row.best_any_f = best_any;
    last_branch = r.branch_id;
    rows.push_back(row);
  }
  return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out =
      "execution,record_id,branch_id,depth,branch_start,v,f,incumbent_record_id,incumbent_v,incumbent_f,"
      "best_valid_f,best_any_f\n";
  for (const ConvergenceRow& r : rows) {
    out += std::to_string(r.execution) + "," + r.record_id + "," + std::to_string(r.branch_id) + "," +
           std::to_string(r.depth) + "," + (r.branch_start ? "1" : "0") + "," + std::to_string(r.v) + "," +
           format_number(r.f) + "," + r.incumbent_id + "," + std::to_string(r.incumbent_v) + "," +
           format_number(r.incumbent_f) + "," + (r.best_valid_f ? format_number(*r.best_valid_f) : "") + "," +
           format_number(r.best_any_f) + "\n";
  }
  return out;
}

std::vector<int> tercile_bins(const std::vector<double>& hardness) {
  std::size_t n = hardness.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return hardness[a] < hardness[b]; });
  std::size_t cut1 = (n + 2) / 3, cut2 = (2 * n + 2) / 3;
  std::vector<int> bins(n);
  for (std::size_t rank = 1; rank <= n; ++rank) {
    bins[order[rank - 1]] = rank <= cut1 ? 0 : rank <= cut2 ? 1 : 2;
  }
  return bins;
}

std::string cost_csv(const std::vector<LedgerEntry>& ledger) {
  std::map<std::string, std::vector<LedgerEntry>> by_role;
  for (const LedgerEntry& e : ledger) by_role[e.role].push_back(e);
  std::string out = "role,calls,input_tokens,output_tokens,approximate_calls,cost\n";
  auto row = [&](const std::string& name, const std::vector<LedgerEntry>& entries) {
    LedgerTotals t = sum_entries(entries);
    long approx = std::count_if(entries.begin(), entries.end(), [](const LedgerEntry& e) { return e.approximate; });
    out += name + "," + std::to_string(t.calls) + "," + std::to_string(t.input_tokens) + "," +
           std::to_string(t.output_tokens) + "," + std::to_string(approx) + "," + format_number(t.cost) + "\n";
  };
  for (Role role : kAllRoles) {
    std::string name(role_name(role));
    auto it = by_role.find(name);
    row(name, it == by_role.end() ? std::vector<LedgerEntry>{} : it->second);
  }
  row("total", ledger);
  return out;
}

namespace {

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::optional<double> difficulty_of(const ProblemInstance& instance) {
  try {
    if (instance.domain == DomainId::AircraftLanding) {
      return difficulty_aircraft(instance.as<AircraftLandingInstance>());
    }
    if (instance.domain == DomainId::PeriodicVehicleRouting) return difficulty_pvrp(instance.as<PvrpInstance>());
  } catch (const Error&) {
  }
  return std::nullopt;
}

bool has_difficulty(DomainId domain) {
  return domain == DomainId::AircraftLanding || domain == DomainId::PeriodicVehicleRouting;
}

}  // namespace

std::vector<std::string> write_report(const LoadedRun& run, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    write_text_file(out_dir / name, text);
    written.push_back(name);
  };

  auto rows = convergence_rows(run.records);
  emit("convergence.csv", convergence_csv(rows));
  emit("cost.csv", cost_csv(run.ledger));

  std::map<std::string, const ExecutionOutcome*> by_id;
  for (const ExecutionOutcome& o : run.test_outcomes) by_id[o.instance_id] = &o;

  if (!run.test_outcomes.empty()) {
    std::string csv = "instance_id,status,valid,score,objective,reference_objective,violation\n";
    for (const ExecutionOutcome& o : run.test_outcomes) {
      std::string reference;
      if (run.test) {
        for (const ProblemInstance& inst : run.test->instances) {
          if (inst.instance_id == o.instance_id && inst.reference_objective) {
            reference = format_number(*inst.reference_objective);
          }
        }
      }
      csv += csv_field(o.instance_id) + "," + std::string(status_name(o.status)) + "," +
             std::to_string(o.score.valid) + "," + format_number(o.score.score) + "," +
             (o.evaluation.objective ? format_number(*o.evaluation.objective) : "") + "," + reference + "," +
             csv_field(o.evaluation.violation ? o.evaluation.violation->describe() : "") + "\n";
    }
    emit("test_scores.csv", csv);
  }

  Json bins_summary = nullptr;
  if (run.test && has_difficulty(run.domain) && !run.test_outcomes.empty()) {
    std::vector<const ProblemInstance*> rated;
    std::vector<double> hardness;
    for (const ProblemInstance& inst : run.test->instances) {
      if (auto d = difficulty_of(inst)) {
        rated.push_back(&inst);
        hardness.push_back(*d);
      }
    }
    std::vector<int> bins = tercile_bins(hardness);
    std::string csv = "instance_id,difficulty,bin,valid,score\n";
    struct Acc {
      int count = 0;
      double score = 0.0, valid = 0.0, lo = 0.0, hi = 0.0;
    };
    Acc acc[3];
    for (std::size_t i = 0; i < rated.size(); ++i) {
      auto it = by_id.find(rated[i]->instance_id);
      int valid = it == by_id.end() ? 0 : it->second->score.valid;
      double score = it == by_id.end() ? 0.0 : it->second->score.score;
      csv += csv_field(rated[i]->instance_id) + "," + format_number(hardness[i]) + "," + std::to_string(bins[i]) +
             "," + std::to_string(valid) + "," + format_number(score) + "\n";
      Acc& a = acc[bins[i]];
      a.lo = a.count ? std::min(a.lo, hardness[i]) : hardness[i];
      a.hi = a.count ? std::max(a.hi, hardness[i]) : hardness[i];
      ++a.count;
      a.score += score;
      a.valid += valid;
    }
    emit("difficulty.csv", csv);
    std::string summary = "bin,count,min_difficulty,max_difficulty,mean_valid,mean_score\n";
    bins_summary = Json::array();
    for (int b = 0; b < 3; ++b) {
      const Acc& a = acc[b];
      double n = a.count ? a.count : 1;
      summary += std::to_string(b) + "," + std::to_string(a.count) + "," + (a.count ? format_number(a.lo) : "") + "," +
                 (a.count ? format_number(a.hi) : "") + "," + format_number(a.valid / n) + "," +
                 format_number(a.score / n) + "\n";
      bins_summary.push_back({{"bin", b}, {"count", a.count}});
    }
    emit("difficulty_bins.csv", summary);
  }

  Json summary;
  summary["run_id"] = run.config.value("run_id", std::string());
  summary["domain"] = domain_name(run.domain);
  summary["status"] = run.complete() ? "complete" : "partial";
  summary["executions"] = run.records.size();
  std::vector<int> branch_ids;
  for (const Record& r : run.records) {
    if (std::find(branch_ids.begin(), branch_ids.end(), r.branch_id) == branch_ids.end()) {
      branch_ids.push_back(r.branch_id);
    }
  }
  summary["branches"] = branch_ids.size();
  summary["global_entries"] = Json::array();
  for (const GlobalMemoryEntry& g : run.global) {
    summary["global_entries"].push_back({{"branch_id", g.branch_id}, {"token_estimate", g.token_estimate}});
  }
  int stranded = 0;
  for (const Json& e : run.trace) {
    if (e.contains("stranded_budget")) stranded = e["stranded_budget"].get<int>();
  }
  summary["stranded_budget"] = stranded;
  LedgerTotals totals = sum_entries(run.ledger);
  summary["cost"] = {{"calls", totals.calls},
                     {"input_tokens", totals.input_tokens},
                     {"output_tokens", totals.output_tokens},
                     {"usd", totals.cost}};
  if (!rows.empty()) {
    summary["dev_incumbent"] = {
        {"record_id", rows.back().incumbent_id}, {"v", rows.back().incumbent_v}, {"f", rows.back().incumbent_f}};
  }
  if (run.final) {
    summary["selected"] = run.final->value("selected", Json(nullptr));
    summary["test"] = run.final->value("test", Json(nullptr));
  }
  summary["difficulty_bins"] = bins_summary;
  emit("summary.json", summary.dump(2) + "\n");
  return written;
}

}  // namespace heursynth
