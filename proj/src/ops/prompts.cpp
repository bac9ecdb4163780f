#include "heursynth/ops/prompts.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "heursynth/common/error.hpp"

namespace heursynth {
namespace {

#include "builtin_templates.inc"

std::string fixed(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string one_line(std::string_view text) {
  std::string out;
  for (char c : text) out += (c == '\n' || c == '\r') ? ' ' : c;
  return out;
}

}  // namespace

std::string_view template_name(TemplateId id) {
  switch (id) {
    case TemplateId::Proposer: return "proposer";
    case TemplateId::Improve: return "improve";
    case TemplateId::Debug: return "debug";
    case TemplateId::Critic: return "critic";
    case TemplateId::Reflection: return "reflection";
  }
  return "unknown";
}

std::string_view builtin_template(TemplateId id) {
  switch (id) {
    case TemplateId::Proposer: return k_proposer;
    case TemplateId::Improve: return k_improve;
    case TemplateId::Debug: return k_debug;
    case TemplateId::Critic: return k_critic;
    case TemplateId::Reflection: return k_reflection;
  }
  return {};
}

TemplateSet::TemplateSet() {
  for (TemplateId id : {TemplateId::Proposer, TemplateId::Improve, TemplateId::Debug, TemplateId::Critic,
                        TemplateId::Reflection}) {
    bodies_[id] = std::string(builtin_template(id));
  }
}

TemplateSet TemplateSet::from_directory(const std::filesystem::path& dir) {
  TemplateSet set;
  for (auto& [id, body] : set.bodies_) {
    std::filesystem::path file = dir / (std::string(template_name(id)) + ".txt");
    if (!std::filesystem::exists(file)) continue;
    std::ifstream in(file, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    body = text.str();
  }
  return set;
}

std::string render_template(std::string_view body, const std::map<std::string, std::string>& bindings) {
  std::string out;
  out.reserve(body.size());
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] == '{') {
      std::size_t j = i + 1;
      while (j < body.size() && (std::islower(static_cast<unsigned char>(body[j])) || body[j] == '_')) ++j;
      if (j < body.size() && body[j] == '}' && j > i + 1) {
        std::string name(body.substr(i + 1, j - i - 1));
        auto it = bindings.find(name);
        if (it == bindings.end()) throw Error(ErrorKind::TemplateUnbound, "placeholder {" + name + "} has no value");
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out += body[i++];
  }
  return out;
}

std::string render_global_memory(std::span<const GlobalMemoryEntry> entries) {
  if (entries.empty()) return std::string(kNoGlobalMemory);
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const GlobalMemoryEntry& e = entries[i];
    if (i) out += "\n";
    out += "Branch " + std::to_string(e.branch_id) + ":\n";
    out += "- Algorithmic design: " + e.algorithmic_design + "\n";
    out += "- Failure and stagnation reason: " + e.failure_modes + "\n";
    out += "- Constraint: " + e.avoidance_directives + "\n";
  }
  return out;
}

std::string_view record_label(const Record& record, const Record* parent) {
  if (record.v == 0 || record.is_bug) return "Bug";
  double before = parent ? parent->f : 0.0;
  if (record.f > before) return "No bugs, improved score";
  if (record.f < before) return "No bugs, worsened score";
  return "No change";
}

std::string render_history(std::span<const Record* const> records, std::span<const Record* const> lookup) {
  if (records.empty()) return std::string(kNoBranchMemory);
  std::string out;
  for (const Record* r : records) {
    const Record* parent = nullptr;
    if (r->parent_record_id) {
      for (const Record* c : lookup) {
        if (c->record_id == *r->parent_record_id) parent = c;
      }
    }
    out += "(depth " + std::to_string(r->depth) + ") " + std::string(record_label(*r, parent)) + "\n";
    out += "  sketch: " + one_line(r->pi) + "\n";
    out += "  diagnostic: " + one_line(r->rho) + "\n";
    out += "  valid: " + std::to_string(r->v) + ", score: " + fixed(r->f) + "\n";
  }
  return out;
}

std::string render_execution_output(std::span<const ExecutionOutcome> outcomes) {
  int valid = 0;
  double score = 0.0;
  for (const ExecutionOutcome& o : outcomes) {
    valid += o.clean() ? 1 : 0;
    score += o.score.score;
  }
  std::string out = "Valid on " + std::to_string(valid) + " of " + std::to_string(outcomes.size()) +
                    " instances; mean score " + fixed(outcomes.empty() ? 0.0 : score / static_cast<double>(outcomes.size())) +
                    "\n";
  std::vector<const ExecutionOutcome*> order;
  for (const ExecutionOutcome& o : outcomes) {
    if (!o.clean()) order.push_back(&o);
  }
  for (const ExecutionOutcome& o : outcomes) {
    if (o.clean()) order.push_back(&o);
  }
  std::size_t shown = std::min(order.size(), kMaxInstancesShown);
  for (std::size_t k = 0; k < shown; ++k) {
    const ExecutionOutcome& o = *order[k];
    out += "\nInstance " + o.instance_id + ": " + std::string(status_name(o.status));
    if (o.evaluation.feasible) {
      out += ", feasible, objective " + fixed(*o.evaluation.objective, 6) + ", score " + fixed(o.score.score) + "\n";
    } else if (o.evaluation.violation && o.status == ExecStatus::Solved) {
      out += ", infeasible: " + o.evaluation.violation->describe() + "\n";
    } else {
      out += ", no solution\n";
    }
    if (!o.stderr_log.empty()) {
      std::string_view log(o.stderr_log);
      if (log.size() > kLogExcerptBytes) log = log.substr(log.size() - kLogExcerptBytes);
      out += "stderr:\n" + std::string(log);
      if (out.back() != '\n') out += "\n";
    }
  }
  if (order.size() > shown) out += "\n(" + std::to_string(order.size() - shown) + " more instances not shown)\n";
  return out;
}

std::optional<ParsedSolver> parse_solver_reply(std::string_view text, std::string* why) {
  auto fail = [&](std::string reason) -> std::optional<ParsedSolver> {
    if (why) *why = std::move(reason);
    return std::nullopt;
  };
  std::size_t open = text.find("```");
  if (open == std::string_view::npos) return fail("no fenced code block");
  std::size_t body = text.find('\n', open);
  if (body == std::string_view::npos) return fail("unterminated code fence");
  ++body;
  std::size_t close = body;
  while (true) {
    close = text.find("```", close);
    if (close == std::string_view::npos) return fail("unterminated code fence");
    if (close == body || text[close - 1] == '\n') break;
    close += 3;
  }
  ParsedSolver out;
  out.code = std::string(text.substr(body, close - body));
  std::string_view sketch = text.substr(0, open);
  while (!sketch.empty() && std::isspace(static_cast<unsigned char>(sketch.front()))) sketch.remove_prefix(1);
  while (!sketch.empty() && std::isspace(static_cast<unsigned char>(sketch.back()))) sketch.remove_suffix(1);
  out.sketch = std::string(sketch);
  if (out.code.find_first_not_of(" \t\r\n") == std::string::npos) return fail("empty code block");
  return out;
}

std::optional<std::string> forbidden_import(std::string_view code) {
  static const std::regex pattern(
      R"((^|\n)[ \t]*(?:import|from)[ \t]+(ortools|gurobipy|gurobi|pulp|pyomo|cvxpy|mip|z3|pyscipopt|scip|docplex|cplex)\b)");
  std::string text(code);
  std::smatch m;
  if (std::regex_search(text, m, pattern)) return m[2].str();
  return std::nullopt;
}

std::optional<Json> extract_json_object(std::string_view text) {
  for (std::size_t start = text.find('{'); start != std::string_view::npos; start = text.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false, escaped = false;
    for (std::size_t i = start; i < text.size(); ++i) {
      char c = text[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}' && --depth == 0) {
        Json doc = Json::parse(text.substr(start, i - start + 1), nullptr, false);
        if (!doc.is_discarded() && doc.is_object()) return doc;
        break;
      }
    }
  }
  return std::nullopt;
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace heursynth
