#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "heursynth/common/error.hpp"
#include "heursynth/memory/memory.hpp"
#include "heursynth/ops/client.hpp"
#include "heursynth/ops/operators.hpp"
#include "heursynth/problem/dataset.hpp"

namespace heursynth::testing {

/// Kind of the Error thrown by `body`, or nullopt when it returns normally.
inline std::optional<ErrorKind> error_kind(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

/// Small Steiner instances whose reference is the best oracle candidate. An empty
/// point set is feasible with objective 0, so a fake solver can hit any f in
/// {0, 1/N, ..., 1} while staying valid.
struct SteinerBench {
  Dataset dev;
  std::vector<CandidateSolution> witnesses;
};

SteinerBench steiner_bench(int count, std::uint64_t seed, Split split = Split::Dev);

/// Fake-worker script: the first `good` instances yield the best candidate, the
/// rest yield an empty point set; with `valid` false the last instance yields
/// nothing at all.
std::string bench_script(const SteinerBench& bench, int good, bool valid = true);

/// A generation reply: sketch line, then the script in one fenced block.
std::string solver_reply(const std::string& sketch, const std::string& code);

/// One JSON reply that satisfies both the critic and the reflection parser.
std::string review_reply(const std::string& tag);

struct ScriptedRoles {
  std::shared_ptr<ScriptedClient> generator;
  std::shared_ptr<ScriptedClient> reviewer;
  OperatorRoleMap roles;
};

ScriptedRoles scripted_roles(std::vector<std::string> generation, std::vector<std::string> reviews,
                             const std::string& gen_model = "gen-model", const std::string& rev_model = "rev-model");

/// Sixteen generation replies mixing invalid, partial and full solvers.
std::vector<std::string> sixteen_generations(const SteinerBench& bench);
std::vector<std::string> reviews(int count);

/// Record whose single outcome carries (v, f), consistent with check_record.
Record make_record(const std::string& id, int branch, int depth, int v, double f, int created = 0,
                   std::optional<std::string> parent = std::nullopt);

}  // namespace heursynth::testing
