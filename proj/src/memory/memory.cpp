#include "heursynth/memory/memory.hpp"

#include <fstream>
#include <sstream>

#include "heursynth/common/error.hpp"
#include "heursynth/eval/score.hpp"

namespace heursynth {

void check_record(const Record& r) {
  if (r.E.empty()) throw Error(ErrorKind::InvariantViolation, r.record_id + ": no execution outcomes");
  ExecutionReport report = aggregate(r.E);
  if (report.v != r.v) throw Error(ErrorKind::InvariantViolation, r.record_id + ": v disagrees with outcomes");
  if (report.f != r.f) throw Error(ErrorKind::InvariantViolation, r.record_id + ": f disagrees with outcomes");
  if (r.depth < 1) throw Error(ErrorKind::InvariantViolation, r.record_id + ": depth must be positive");
  if ((r.depth == 1) != !r.parent_record_id) {
    throw Error(ErrorKind::InvariantViolation, r.record_id + ": only depth 1 has no parent");
  }
}

Json record_to_json(const Record& r) {
  Json e = Json::array();
  for (const ExecutionOutcome& o : r.E) e.push_back(outcome_to_json(o));
  return Json{{"record_id", r.record_id},
              {"branch_id", r.branch_id},
              {"depth", r.depth},
              {"created", r.created},
              {"parent_record_id", r.parent_record_id ? Json(*r.parent_record_id) : Json(nullptr)},
              {"solver_ref", r.solver_ref},
              {"pi", r.pi},
              {"rho", r.rho},
              {"is_bug", r.is_bug},
              {"v", r.v},
              {"f", r.f},
              {"E", e}};
}

Record record_from_json(DomainId domain, const Json& j) {
  try {
    Record r;
    r.record_id = j.at("record_id").get<std::string>();
    r.branch_id = j.at("branch_id").get<int>();
    r.depth = j.at("depth").get<int>();
    r.created = j.at("created").get<int>();
    if (!j.at("parent_record_id").is_null()) r.parent_record_id = j.at("parent_record_id").get<std::string>();
    r.solver_ref = j.at("solver_ref").get<std::string>();
    r.pi = j.at("pi").get<std::string>();
    r.rho = j.at("rho").get<std::string>();
    r.is_bug = j.at("is_bug").get<bool>();
    r.v = j.at("v").get<int>();
    r.f = j.at("f").get<double>();
    for (const Json& o : j.at("E")) r.E.push_back(outcome_from_json(domain, o));
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::CorruptArtifact, std::string("record: ") + e.what());
  }
}

void BranchLocalMemory::append(Record record) {
  if (record.branch_id != branch_id_) {
    throw Error(ErrorKind::BranchMismatch, record.record_id + " belongs to branch " +
                                               std::to_string(record.branch_id) + ", not " +
                                               std::to_string(branch_id_));
  }
  for (const Record& r : records_) {
    if (r.record_id == record.record_id) throw Error(ErrorKind::DuplicateId, record.record_id);
  }
  check_record(record);
  records_.push_back(std::move(record));
}

bool BranchLocalMemory::has_valid() const {
  for (const Record& r : records_) {
    if (r.v == 1) return true;
  }
  return false;
}

std::size_t whitespace_tokens(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : text) {
    bool space = c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

GlobalMemoryEntry make_global_entry(int branch_id, std::string design, std::string failures,
                                    std::string directives) {
  GlobalMemoryEntry e{branch_id, std::move(design), std::move(failures), std::move(directives), 0};
  if (e.algorithmic_design.empty() || e.failure_modes.empty() || e.avoidance_directives.empty()) {
    throw Error(ErrorKind::InvariantViolation, "global entry fields must be non-empty");
  }
  e.token_estimate = whitespace_tokens(e.algorithmic_design) + whitespace_tokens(e.failure_modes) +
                     whitespace_tokens(e.avoidance_directives);
  return e;
}

Json global_entry_to_json(const GlobalMemoryEntry& e) {
  return Json{{"branch_id", e.branch_id},
              {"algorithmic_design", e.algorithmic_design},
              {"failure_modes", e.failure_modes},
              {"avoidance_directives", e.avoidance_directives},
              {"token_estimate", e.token_estimate}};
}

GlobalMemoryEntry global_entry_from_json(const Json& j) {
  try {
    return GlobalMemoryEntry{j.at("branch_id").get<int>(), j.at("algorithmic_design").get<std::string>(),
                             j.at("failure_modes").get<std::string>(),
                             j.at("avoidance_directives").get<std::string>(),
                             j.at("token_estimate").get<std::size_t>()};
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::CorruptArtifact, std::string("global entry: ") + e.what());
  }
}

void add_global_entry(std::vector<GlobalMemoryEntry>& global, GlobalMemoryEntry entry) {
  for (const GlobalMemoryEntry& e : global) {
    if (e.branch_id == entry.branch_id) {
      throw Error(ErrorKind::DuplicateBranch, "branch " + std::to_string(entry.branch_id));
    }
  }
  global.push_back(std::move(entry));
}

ArtifactStore::ArtifactStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(*dir_);
}

void ArtifactStore::put(const std::string& ref, const std::string& source) {
  if (sources_.count(ref)) throw Error(ErrorKind::DuplicateId, "solver " + ref + " already stored");
  if (dir_) {
    std::ofstream out(*dir_ / ref, std::ios::binary);
    out << source;
    if (!out) throw Error(ErrorKind::Io, "cannot write solver " + ref);
  }
  sources_.emplace(ref, source);
}

const std::string& ArtifactStore::get(const std::string& ref) const {
  auto it = sources_.find(ref);
  if (it == sources_.end()) throw Error(ErrorKind::MissingReference, "solver " + ref);
  return it->second;
}

ArtifactStore ArtifactStore::load(const std::filesystem::path& dir) {
  ArtifactStore store;
  if (!std::filesystem::is_directory(dir)) return store;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    store.sources_.emplace(entry.path().filename().string(), text.str());
  }
  return store;
}

const Record& select_repair_parent(const BranchLocalMemory& memory, Rng& rng) {
  const auto& records = memory.records();
  if (records.empty()) throw Error(ErrorKind::EmptyMemory, "branch " + std::to_string(memory.branch_id()));
  if (memory.has_valid()) {
    throw Error(ErrorKind::HasValidRecord, "branch " + std::to_string(memory.branch_id()) + " has a valid record");
  }
  double total = 0.0;
  for (const Record& r : records) total += r.f;
  if (total <= 0.0) {
    return records[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(records.size()) - 1))];
  }
  double u = rng.unit() * total;
  double acc = 0.0;
  for (const Record& r : records) {
    acc += r.f;
    if (r.f > 0.0 && u < acc) return r;
  }
  // Rounding left u at the top end: take the last record with mass.
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    if (it->f > 0.0) return *it;
  }
  return records.back();
}

const Record& select_improve_parent(const BranchLocalMemory& memory) {
  const Record* best = nullptr;
  for (const Record& r : memory.records()) {
    if (r.v == 1 && (!best || r.f > best->f)) best = &r;
  }
  if (!best) throw Error(ErrorKind::NoValidRecord, "branch " + std::to_string(memory.branch_id()));
  return *best;
}

const Record& select_final_record(std::span<const Record* const> records) {
  if (records.empty()) throw Error(ErrorKind::EmptySearch, "no records to select from");
  auto better = [](const Record* a, const Record* b) {
    if (a->v != b->v) return a->v > b->v;
    if (a->f != b->f) return a->f > b->f;
    return a->created < b->created;
  };
  const Record* best = records.front();
  for (const Record* r : records) {
    if (better(r, best)) best = r;
  }
  return *best;
}

std::pair<Record, std::string> final_selection(std::span<const BranchLocalMemory> memories,
                                               const ArtifactStore& store) {
  std::vector<const Record*> all;
  for (const BranchLocalMemory& m : memories) {
    for (const Record& r : m.records()) all.push_back(&r);
  }
  const Record& best = select_final_record(all);
  return {best, store.get(best.solver_ref)};
}

}  // namespace heursynth
