#include "heursynth/exec/executor.hpp"

#include <fcntl.h>
#include <poll.h>
#include <sched.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "heursynth/common/error.hpp"
#include "heursynth/eval/evaluate.hpp"
#include "heursynth/eval/score.hpp"
#include "heursynth/problem/serialize.hpp"

namespace heursynth {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string resolve_executable(const std::string& name) {
  if (name.empty()) return {};
  if (name.find('/') != std::string::npos) return ::access(name.c_str(), X_OK) == 0 ? name : std::string{};
  const char* path = std::getenv("PATH");
  std::stringstream dirs(path ? path : "/usr/bin:/bin");
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    std::string candidate = (dir.empty() ? "." : dir) + "/" + name;
    struct stat st {};
    if (::stat(candidate.c_str(), &st) == 0 && S_ISREG(st.st_mode) && ::access(candidate.c_str(), X_OK) == 0) {
      return candidate;
    }
  }
  return {};
}

// Writes a message from the forked child without touching the heap.
void child_fail(int fd, const char* what) {
  ssize_t ignored = ::write(fd, what, std::strlen(what));
  (void)ignored;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
}

}  // namespace

void append_capped(std::string& log, std::string_view text, std::size_t cap) {
  if (log.size() >= cap) {
    if (log.size() == cap && !text.empty()) log += kTruncationMarker;
    return;
  }
  std::size_t room = cap - log.size();
  if (text.size() <= room) {
    log.append(text);
    return;
  }
  log.append(text.substr(0, room));
  log += kTruncationMarker;
}

bool platform_supports_isolation() {
  static const bool supported = [] {
    pid_t pid = ::fork();
    if (pid < 0) return false;
    if (pid == 0) _exit(::unshare(CLONE_NEWUSER | CLONE_NEWNET) == 0 ? 0 : 1);
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    return WIFEXITED(status) && WEXITSTATUS(status) == 0;
  }();
  return supported;
}

SandboxPolicy sandbox_policy(const SandboxConfig& config) {
  SandboxPolicy policy;
  policy.config = config;
  policy.scratch_root = config.scratch_root.empty() ? std::filesystem::temp_directory_path() : config.scratch_root;
  if (config.network_isolation) {
    if (platform_supports_isolation()) {
      policy.isolate_network = true;
    } else if (!config.insecure_override) {
      throw Error(ErrorKind::PolicyUnsupported,
                  "cannot create an isolated network namespace; set the insecure override to run anyway");
    }
  }
  return policy;
}

// ---------------------------------------------------------------------------

void YieldTracker::on_line(std::string_view line, double received) {
  ++line_no_;
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
  if (line.empty()) return;
  auto note = [&](const std::string& what) {
    notes_ += "[executor] line " + std::to_string(line_no_) + ": " + what + "\n";
  };
  if (received > timeout_) {
    note("received after the deadline, rejected");
    return;
  }
  Json doc = Json::parse(line, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("seq") || !doc["seq"].is_number_integer() ||
      !doc.contains("solution")) {
    note("malformed solution line skipped");
    return;
  }
  long long seq = doc["seq"].get<long long>();
  if (seq <= last_seq_) {
    note("non-increasing seq skipped");
    return;
  }
  SolutionParse parsed = parse_solution(domain_, doc["solution"]);
  if (!parsed.solution) {
    note("unparseable solution skipped (" + parsed.error + ")");
    return;
  }
  last_seq_ = seq;
  last_ = std::move(parsed.solution);
  ++yields_;
}

ExecutionOutcome build_outcome(const ProblemInstance& instance, const WorkerRun& run, const YieldTracker& tracker,
                               const ExecutorConfig& config) {
  ExecutionOutcome o;
  o.instance_id = instance.instance_id;
  o.stdout_log = run.stdout_log;
  o.stderr_log = run.stderr_log + tracker.notes();
  o.wall_time = std::min(run.wall_time, config.timeout + config.grace);
  bool crashed = !run.killed_at_deadline && (!run.exited || run.exit_code != 0);
  if (tracker.yield_count() > 0 && !(crashed && config.strict_crash_voids_yields)) {
    o.status = ExecStatus::Solved;
    o.last_solution = tracker.last_solution();
    o.yield_count = tracker.yield_count();
  } else if (crashed) {
    o.status = ExecStatus::Crashed;
  } else if (run.killed_at_deadline) {
    o.status = ExecStatus::TimeoutNoYield;
  } else {
    o.status = ExecStatus::YieldedNothing;
  }
  if (o.last_solution) {
    o.evaluation = evaluate(instance, *o.last_solution);
  } else {
    o.evaluation = RawOutcome::fail(Violation{"no-solution", {instance.instance_id}, std::string(status_name(o.status))});
  }
  o.score = normalize_score(o.evaluation, *instance.reference_objective);
  return o;
}

ExecutionReport execute_solver(const std::string& solver_source, const Dataset& dataset, WorkerBackend& backend,
                               const ExecutorConfig& config) {
  if (dataset.instances.empty()) throw Error(ErrorKind::DatasetEmpty, "nothing to execute on");
  for (const ProblemInstance& in : dataset.instances) {
    if (!in.reference_objective) {
      throw Error(ErrorKind::MissingReference, "instance " + in.instance_id + " has no reference objective");
    }
  }
  const std::size_t n = dataset.instances.size();
  std::size_t workers = config.parallelism > 0
                            ? static_cast<std::size_t>(config.parallelism)
                            : std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  workers = std::min(workers, n);

  std::vector<ExecutionOutcome> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const ProblemInstance& instance = dataset.instances[i];
        YieldTracker tracker(instance.domain, config.timeout);
        WorkerRun run = backend.run(solver_source, instance, config.timeout, config.grace,
                                    [&](std::string_view line, double t) { tracker.on_line(line, t); });
        slots[i] = build_outcome(instance, run, tracker, config);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return aggregate(std::move(slots));
}

// ---------------------------------------------------------------------------

SubprocessBackend::SubprocessBackend(std::vector<std::string> worker_command, SandboxPolicy policy,
                                     std::string solver_filename)
    : command_(std::move(worker_command)), policy_(std::move(policy)), solver_filename_(std::move(solver_filename)) {
  executable_ = command_.empty() ? std::string{} : resolve_executable(command_.front());
  if (executable_.empty()) {
    throw Error(ErrorKind::ShimUnavailable,
                "worker runtime not found: " + (command_.empty() ? std::string("(empty command)") : command_.front()));
  }
  std::filesystem::create_directories(policy_.scratch_root);
  std::string pattern = (policy_.scratch_root / "heursynth-XXXXXX").string();
  std::vector<char> buf(pattern.begin(), pattern.end());
  buf.push_back('\0');
  if (!::mkdtemp(buf.data())) throw Error(ErrorKind::Io, "cannot create scratch directory under " + pattern);
  scratch_dir_ = buf.data();
}

SubprocessBackend::~SubprocessBackend() {
  std::error_code ec;
  std::filesystem::remove_all(scratch_dir_, ec);
}

WorkerRun SubprocessBackend::run(const std::string& solver_source, const ProblemInstance& instance, double timeout,
                                 double grace, const LineCallback& on_line) {
  static std::atomic<unsigned long> counter{0};
  std::filesystem::path dir = scratch_dir_ / ("w" + std::to_string(counter++));
  std::filesystem::create_directories(dir);
  std::filesystem::path solver = dir / solver_filename_;
  std::filesystem::path payload = dir / "instance.json";
  write_file(solver, solver_source);
  write_file(payload, payload_to_json(instance).dump());

  double deadline_epoch =
      std::chrono::duration<double>(std::chrono::system_clock::now().time_since_epoch()).count() + timeout;
  std::ostringstream deadline_text;
  deadline_text.precision(17);
  deadline_text << deadline_epoch;

  std::vector<std::string> args = command_;
  args.push_back(solver.string());
  args.push_back(payload.string());
  args.push_back(deadline_text.str());
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);
  std::string dir_text = dir.string();
  const bool isolate = policy_.isolate_network;
  const rlim_t mem = static_cast<rlim_t>(policy_.config.memory_limit_bytes);

  int out_pipe[2], err_pipe[2];
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) throw Error(ErrorKind::Io, "pipe failed");
  if (::pipe2(err_pipe, O_CLOEXEC) != 0) {
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    throw Error(ErrorKind::Io, "pipe failed");
  }

  auto start = Clock::now();
  pid_t pid = ::fork();
  if (pid < 0) throw Error(ErrorKind::Io, "fork failed");
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::dup2(err_pipe[1], STDERR_FILENO);
    int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    if (isolate && ::unshare(CLONE_NEWUSER | CLONE_NEWNET) != 0) {
      child_fail(STDERR_FILENO, "sandbox: unshare failed\n");
      _exit(126);
    }
    struct rlimit lim {mem, mem};
    ::setrlimit(RLIMIT_AS, &lim);
    if (::chdir(dir_text.c_str()) != 0) {
      child_fail(STDERR_FILENO, "sandbox: chdir failed\n");
      _exit(126);
    }
    ::execv(executable_.c_str(), argv.data());
    child_fail(STDERR_FILENO, "sandbox: exec failed\n");
    _exit(127);
  }
  ::setpgid(pid, pid);
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);

  WorkerRun result;
  const std::size_t cap = policy_.config.log_cap_bytes;
  std::string partial;
  bool out_open = true, err_open = true, reaped = false;
  int status = 0;
  const double hard_stop = timeout + grace;
  char buf[65536];

  auto deliver = [&](double t) {
    std::size_t pos;
    while ((pos = partial.find('\n')) != std::string::npos) {
      on_line(std::string_view(partial).substr(0, pos), t);
      partial.erase(0, pos + 1);
    }
  };

  while (out_open || err_open || !reaped) {
    if (!reaped) {
      pid_t r = ::waitpid(pid, &status, WNOHANG);
      if (r == pid) {
        reaped = true;
        ::kill(-pid, SIGKILL);  // stray descendants
      }
    }
    double now = seconds_since(start);
    if (now >= hard_stop) {
      ::kill(-pid, SIGKILL);
      if (!reaped) {
        while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
        }
        reaped = true;
        result.killed_at_deadline = true;
      }
      break;
    }
    if (!out_open && !err_open) {
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
      continue;
    }
    pollfd fds[2];
    nfds_t count = 0;
    if (out_open) fds[count++] = {out_pipe[0], POLLIN, 0};
    if (err_open) fds[count++] = {err_pipe[0], POLLIN, 0};
    int wait_ms = std::clamp(static_cast<int>((hard_stop - now) * 1000.0) + 1, 1, 50);
    int ready = ::poll(fds, count, wait_ms);
    if (ready < 0 && errno != EINTR) break;
    for (nfds_t k = 0; k < count; ++k) {
      if (!(fds[k].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      ssize_t got = ::read(fds[k].fd, buf, sizeof buf);
      double t = seconds_since(start);
      bool is_out = fds[k].fd == out_pipe[0];
      if (got <= 0) {
        (is_out ? out_open : err_open) = false;
        continue;
      }
      std::string_view chunk(buf, static_cast<std::size_t>(got));
      if (is_out) {
        append_capped(result.stdout_log, chunk, cap);
        partial.append(chunk);
        deliver(t);
        // A runaway line without a newline is dropped rather than buffered forever.
        if (partial.size() > (std::size_t{16} << 20)) partial.clear();
      } else {
        append_capped(result.stderr_log, chunk, cap);
      }
    }
  }
  if (!partial.empty()) on_line(partial, seconds_since(start));
  ::close(out_pipe[0]);
  ::close(err_pipe[0]);
  result.wall_time = seconds_since(start);
  if (WIFEXITED(status)) {
    result.exited = true;
    result.exit_code = WEXITSTATUS(status);
  } else {
    result.exited = false;
    result.exit_code = WIFSIGNALED(status) ? 128 + WTERMSIG(status) : -1;
  }
  std::error_code ec;
  std::filesystem::remove_all(dir, ec);
  return result;
}

// ---------------------------------------------------------------------------

WorkerRun InProcessBackend::run(const std::string& solver_source, const ProblemInstance& instance, double timeout,
                                double grace, const LineCallback& on_line) {
  struct Event {
    double t;
    std::string line;
  };
  std::vector<Event> events;
  std::string stderr_text;
  double clock = 0.0;
  int exit_code = 0;
  bool ended = false;
  int seq = 0;

  std::istringstream lines(solver_source);
  std::string raw;
  while (!ended && std::getline(lines, raw)) {
    std::string_view line(raw);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream in{std::string(line)};
    std::string op;
    in >> op;
    auto rest = [&] {
      std::string r;
      std::getline(in, r);
      std::size_t b = r.find_first_not_of(' ');
      return b == std::string::npos ? std::string{} : r.substr(b);
    };
    if (op == "yield" || op == "emit") {
      double t = 0.0;
      if (!(in >> t)) {
        stderr_text += "fake worker: bad time in '" + raw + "'\n";
        exit_code = 1;
        ended = true;
        break;
      }
      std::string body = rest();
      if (!body.empty() && body.front() == '@') {
        std::size_t space = body.find(' ');
        std::string target = body.substr(1, space == std::string::npos ? std::string::npos : space - 1);
        body = space == std::string::npos ? std::string{} : body.substr(space + 1);
        if (target != instance.instance_id) continue;
      }
      clock = std::max(clock, t);
      if (op == "yield") {
        Json sol = Json::parse(body, nullptr, false);
        if (sol.is_discarded()) {
          events.push_back({clock, body});
        } else {
          events.push_back({clock, Json{{"seq", ++seq}, {"solution", sol}}.dump()});
        }
      } else {
        events.push_back({clock, body});
      }
    } else if (op == "stderr") {
      stderr_text += rest() + "\n";
    } else if (op == "sleep") {
      double t = 0.0;
      in >> t;
      clock = std::max(clock, t);
    } else if (op == "crash") {
      exit_code = 1;
      in >> exit_code;
      stderr_text += "Traceback (most recent call last):\n  simulated crash\n";
      ended = true;
    } else if (op == "exit") {
      in >> exit_code;
      ended = true;
    } else {
      events.clear();
      stderr_text += "fake worker: unrecognized directive '" + op + "'\n";
      exit_code = 1;
      ended = true;
    }
  }

  WorkerRun result;
  const double hard_stop = timeout + grace;
  for (const Event& e : events) {
    if (e.t >= hard_stop) break;
    append_capped(result.stdout_log, e.line + "\n", log_cap_);
    on_line(e.line, e.t);
  }
  append_capped(result.stderr_log, stderr_text, log_cap_);
  if (clock >= hard_stop) {
    result.killed_at_deadline = true;
    result.exited = false;
    result.exit_code = 128 + SIGKILL;
    result.wall_time = hard_stop;
  } else {
    result.exited = true;
    result.exit_code = exit_code;
    result.wall_time = clock;
  }
  return result;
}

}  // namespace heursynth
