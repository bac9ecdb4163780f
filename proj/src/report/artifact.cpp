#include "heursynth/report/artifact.hpp"

#include <fcntl.h>
#include <signal.h>
#include <unistd.h>

#include <cerrno>
#include <sstream>

#include "heursynth/common/error.hpp"

namespace heursynth {
namespace fs = std::filesystem;

void write_text_file(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

namespace {

std::optional<long> lock_owner(const fs::path& file) {
  std::ifstream in(file);
  long pid = 0;
  if (in >> pid && pid > 0) return pid;
  return std::nullopt;
}

bool alive(long pid) { return ::kill(static_cast<pid_t>(pid), 0) == 0 || errno == EPERM; }

}  // namespace

RunLock::RunLock(fs::path dir) : file_(dir / artifact::kLock) {
  fs::create_directories(dir);
  for (int attempt = 0; attempt < 2; ++attempt) {
    int fd = ::open(file_.c_str(), O_WRONLY | O_CREAT | O_EXCL, 0644);
    if (fd >= 0) {
      std::string pid = std::to_string(::getpid()) + "\n";
      [[maybe_unused]] auto n = ::write(fd, pid.data(), pid.size());
      ::close(fd);
      return;
    }
    auto owner = lock_owner(file_);
    if (owner && alive(*owner)) {
      throw Error(ErrorKind::Io, "run directory " + dir.string() + " is locked by pid " + std::to_string(*owner));
    }
    fs::remove(file_);
  }
  throw Error(ErrorKind::Io, "cannot lock run directory " + dir.string());
}

RunLock::~RunLock() {
  std::error_code ec;
  fs::remove(file_, ec);
}

bool RunLock::held_by_other(const fs::path& dir) {
  auto owner = lock_owner(dir / artifact::kLock);
  return owner && *owner != ::getpid() && alive(*owner);
}

RunWriter::RunWriter(fs::path dir) : dir_(std::move(dir)), lock_(dir_) {
  fs::create_directories(solvers_dir());
  auto open = [&](std::ofstream& out, const char* name) {
    out.open(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + (dir_ / name).string());
  };
  open(trace_, artifact::kTrace);
  open(records_, artifact::kRecords);
  open(ledger_, artifact::kLedger);
  // Leftovers from an earlier run in the same directory would be misread.
  for (const char* stale : {artifact::kFinal, artifact::kTestOutcomes, artifact::kTestDataset, artifact::kConvergence}) {
    fs::remove(dir_ / stale);
  }
  for (const auto& entry : fs::directory_iterator(solvers_dir())) fs::remove(entry.path());
  global({});
}

void RunWriter::append(std::ofstream& out, const Json& line) {
  out << line.dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write failed in " + dir_.string());
}

void RunWriter::write_config(const Json& config) { write_text_file(dir_ / artifact::kConfig, config.dump(2) + "\n"); }

void RunWriter::trace(const Json& event) { append(trace_, event); }

void RunWriter::record(const Record& record) { append(records_, record_to_json(record)); }

void RunWriter::ledger(const LedgerEntry& entry) { append(ledger_, ledger_entry_to_json(entry)); }

void RunWriter::global(const std::vector<GlobalMemoryEntry>& entries) {
  Json list = Json::array();
  for (const GlobalMemoryEntry& e : entries) list.push_back(global_entry_to_json(e));
  write_text_file(dir_ / artifact::kGlobal, list.dump(2) + "\n");
}

void RunWriter::test_dataset(const Dataset& test) {
  write_text_file(dir_ / artifact::kTestDataset, serialize_dataset(test));
}

void RunWriter::test_outcome(const ExecutionOutcome& outcome) {
  if (!test_outcomes_.is_open()) {
    test_outcomes_.open(dir_ / artifact::kTestOutcomes, std::ios::binary | std::ios::trunc);
  }
  append(test_outcomes_, outcome_to_json(outcome));
}

void RunWriter::convergence(const std::string& csv) { write_text_file(dir_ / artifact::kConvergence, csv); }

void RunWriter::final(const Json& summary) { write_text_file(dir_ / artifact::kFinal, summary.dump(2) + "\n"); }

namespace {

[[noreturn]] void corrupt(const fs::path& file, const std::string& what) {
  throw Error(ErrorKind::CorruptArtifact, file.string() + ": " + what);
}

Json parse_file(const fs::path& file) {
  Json doc = Json::parse(read_text_file(file), nullptr, false);
  if (doc.is_discarded()) corrupt(file, "not valid JSON");
  return doc;
}

std::vector<Json> parse_lines(const fs::path& file) {
  std::vector<Json> out;
  if (!fs::exists(file)) return out;
  std::string text = read_text_file(file);
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    ++line_no;
    if (end == std::string::npos) break;  // interrupted write
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    Json doc = Json::parse(line, nullptr, false);
    if (doc.is_discarded()) corrupt(file, "line " + std::to_string(line_no) + " is not valid JSON");
    out.push_back(std::move(doc));
  }
  return out;
}

}  // namespace

LoadedRun load_run(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::CorruptArtifact, dir.string() + " is not a directory");
  LoadedRun run;
  run.dir = dir;
  fs::path config_file = dir / artifact::kConfig;
  if (!fs::exists(config_file)) corrupt(config_file, "missing");
  run.config = parse_file(config_file);
  auto domain = run.config.is_object() && run.config.contains("domain") && run.config["domain"].is_string()
                    ? parse_domain(run.config["domain"].get<std::string>())
                    : std::nullopt;
  if (!domain) corrupt(config_file, "missing or unknown domain");
  run.domain = *domain;

  try {
    run.trace = parse_lines(dir / artifact::kTrace);
    for (const Json& j : parse_lines(dir / artifact::kRecords)) run.records.push_back(record_from_json(run.domain, j));
    for (const Json& j : parse_lines(dir / artifact::kLedger)) run.ledger.push_back(ledger_entry_from_json(j));
    if (fs::exists(dir / artifact::kGlobal)) {
      Json list = parse_file(dir / artifact::kGlobal);
      if (!list.is_array()) corrupt(dir / artifact::kGlobal, "expected an array");
      for (const Json& j : list) run.global.push_back(global_entry_from_json(j));
    }
    run.store = ArtifactStore::load(dir / artifact::kSolvers);
    if (fs::exists(dir / artifact::kFinal)) run.final = parse_file(dir / artifact::kFinal);
    if (fs::exists(dir / artifact::kTestDataset)) run.test = load_dataset(dir / artifact::kTestDataset, Split::Test);
    for (const Json& j : parse_lines(dir / artifact::kTestOutcomes)) {
      run.test_outcomes.push_back(outcome_from_json(run.domain, j));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CorruptArtifact) throw;
    throw Error(ErrorKind::CorruptArtifact, dir.string() + ": " + e.what());
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::CorruptArtifact, dir.string() + ": " + e.what());
  }
  std::stable_sort(run.records.begin(), run.records.end(),
                   [](const Record& a, const Record& b) { return a.created < b.created; });
  for (const Record& r : run.records) {
    if (!run.store.contains(r.solver_ref)) corrupt(dir / artifact::kSolvers, "missing solver " + r.solver_ref);
  }
  return run;
}

}  // namespace heursynth
