#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "heursynth/exec/outcome.hpp"
#include "heursynth/problem/dataset.hpp"

namespace heursynth {

inline constexpr double kDefaultGrace = 1.0;
inline constexpr std::size_t kLogCapBytes = 64 * 1024;

struct SandboxConfig {
  bool network_isolation = true;
  /// Run without isolation when the platform cannot provide it.
  bool insecure_override = false;
  std::uint64_t memory_limit_bytes = std::uint64_t{2} << 30;
  /// Parent of per-run scratch directories; empty means the system temp dir.
  std::filesystem::path scratch_root;
  std::size_t log_cap_bytes = kLogCapBytes;
};

struct SandboxPolicy {
  SandboxConfig config;
  bool isolate_network = false;
  std::filesystem::path scratch_root;
};

/// True when new user and network namespaces can be created here.
bool platform_supports_isolation();

/// Throws Error(PolicyUnsupported) when isolation is requested but unavailable
/// and insecure_override is off.
SandboxPolicy sandbox_policy(const SandboxConfig& config);

/// What a worker produced. Solution lines go to the line callback as they
/// arrive, stamped with seconds since launch.
struct WorkerRun {
  std::string stdout_log;
  std::string stderr_log;
  bool exited = false;  // false when killed by signal
  int exit_code = 0;
  bool killed_at_deadline = false;
  double wall_time = 0.0;
};

using LineCallback = std::function<void(std::string_view line, double received)>;

class WorkerBackend {
 public:
  virtual ~WorkerBackend() = default;
  virtual WorkerRun run(const std::string& solver_source, const ProblemInstance& instance, double timeout,
                        double grace, const LineCallback& on_line) = 0;
};

/// One OS process per instance: worker_command + [solver, instance, deadline].
class SubprocessBackend : public WorkerBackend {
 public:
  /// Throws Error(ShimUnavailable) when worker_command[0] cannot be found.
  SubprocessBackend(std::vector<std::string> worker_command, SandboxPolicy policy,
                    std::string solver_filename = "solver.py");
  ~SubprocessBackend() override;

  WorkerRun run(const std::string& solver_source, const ProblemInstance& instance, double timeout, double grace,
                const LineCallback& on_line) override;

  const std::filesystem::path& scratch_dir() const { return scratch_dir_; }

 private:
  std::vector<std::string> command_;
  std::string executable_;
  SandboxPolicy policy_;
  std::string solver_filename_;
  std::filesystem::path scratch_dir_;
};

/// Simulated worker that interprets a small line-oriented script instead of
/// running code. Time is virtual, so results are reproducible. Directives:
///   yield <t> [@<instance_id>] <json solution>
///   emit <t> [@<instance_id>] <raw stdout text>
///   stderr <text>
///   sleep <t>
///   crash [code]
///   exit <code>
/// Lines starting with '#' and blank lines are ignored. An unrecognized
/// directive makes the worker crash before producing anything.
class InProcessBackend : public WorkerBackend {
 public:
  explicit InProcessBackend(std::size_t log_cap_bytes = kLogCapBytes) : log_cap_(log_cap_bytes) {}
  WorkerRun run(const std::string& solver_source, const ProblemInstance& instance, double timeout, double grace,
                const LineCallback& on_line) override;

 private:
  std::size_t log_cap_;
};

/// Appends to a capped log, adding a truncation marker once.
void append_capped(std::string& log, std::string_view text, std::size_t cap);
inline constexpr std::string_view kTruncationMarker = "\n[output truncated]\n";

/// Follows a worker's solution stream: keeps the last well-formed line
/// received at or before the deadline.
class YieldTracker {
 public:
  YieldTracker(DomainId domain, double timeout) : domain_(domain), timeout_(timeout) {}
  void on_line(std::string_view line, double received);

  const std::optional<CandidateSolution>& last_solution() const { return last_; }
  int yield_count() const { return yields_; }
  const std::string& notes() const { return notes_; }

 private:
  DomainId domain_;
  double timeout_;
  std::optional<CandidateSolution> last_;
  long long last_seq_ = 0;
  int yields_ = 0;
  int line_no_ = 0;
  std::string notes_;
};

struct ExecutorConfig {
  double timeout = 10.0;
  int parallelism = 0;  // 0: min(instances, CPUs)
  double grace = kDefaultGrace;
  bool strict_crash_voids_yields = false;
};

/// Status, evaluation and score from one worker run.
ExecutionOutcome build_outcome(const ProblemInstance& instance, const WorkerRun& run, const YieldTracker& tracker,
                               const ExecutorConfig& config);

/// Runs the solver on every instance (one worker each, in parallel) and
/// aggregates. Throws Error(DatasetEmpty) or Error(MissingReference).
ExecutionReport execute_solver(const std::string& solver_source, const Dataset& dataset, WorkerBackend& backend,
                               const ExecutorConfig& config);

}  // namespace heursynth
