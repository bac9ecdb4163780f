#include <doctest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "heursynth/memory/memory.hpp"

using namespace heursynth;
using testing::error_kind;
using testing::make_record;

namespace {

BranchLocalMemory branch(int id, std::vector<std::pair<int, double>> vf) {
  BranchLocalMemory m(id);
  int depth = 1;
  for (auto [v, f] : vf) {
    std::string rid = "b" + std::to_string(id) + "-d" + std::to_string(depth);
    std::optional<std::string> parent;
    if (depth > 1) parent = "b" + std::to_string(id) + "-d1";
    m.append(make_record(rid, id, depth, v, f, id * 100 + depth, parent));
    ++depth;
  }
  return m;
}

}  // namespace

TEST_CASE("append keeps branch invariants") {
  BranchLocalMemory m(1);
  m.append(make_record("b1-d1", 1, 1, 0, 0.0));
  CHECK(m.records().size() == 1);
  CHECK(m.records()[0].depth == 1);
  CHECK(!m.has_valid());
  CHECK(error_kind([&] { m.append(make_record("b2-d1", 2, 1, 0, 0.0)); }) == ErrorKind::BranchMismatch);
  CHECK(error_kind([&] { m.append(make_record("b1-d1", 1, 2, 0, 0.0)); }) == ErrorKind::DuplicateId);
  m.append(make_record("b1-d2", 1, 2, 1, 0.4));
  CHECK(m.has_valid());
}

TEST_CASE("record invariants") {
  Record r = make_record("x", 1, 1, 1, 0.5);
  CHECK_NOTHROW(check_record(r));
  r.f = 0.6;
  CHECK(error_kind([&] { check_record(r); }) == ErrorKind::InvariantViolation);
  Record orphan = make_record("y", 1, 2, 1, 0.5);
  orphan.parent_record_id.reset();
  CHECK(error_kind([&] { check_record(orphan); }) == ErrorKind::InvariantViolation);
  Record empty = make_record("z", 1, 1, 1, 0.5);
  empty.E.clear();
  CHECK(error_kind([&] { check_record(empty); }) == ErrorKind::InvariantViolation);
}

TEST_CASE("record json round trip") {
  Record r = make_record("b3-d2", 3, 2, 0, 0.25, 7, std::string("b3-d1"));
  r.is_bug = true;
  CHECK(record_from_json(DomainId::EuclideanSteiner, record_to_json(r)) == r);
}

TEST_CASE("repair parent sampling") {
  BranchLocalMemory one = branch(1, {{0, 0.3}});
  Rng rng(1);
  for (int i = 0; i < 20; ++i) CHECK(select_repair_parent(one, rng).record_id == "b1-d1");

  BranchLocalMemory three = branch(2, {{0, 0.2}, {0, 0.6}, {0, 0.2}});
  std::map<std::string, int> counts;
  for (int i = 0; i < 20000; ++i) ++counts[select_repair_parent(three, rng).record_id];
  CHECK(counts["b2-d2"] / 20000.0 == doctest::Approx(0.6).epsilon(0.05));
  CHECK(counts["b2-d1"] / 20000.0 == doctest::Approx(0.2).epsilon(0.1));

  BranchLocalMemory zeros = branch(3, {{0, 0.0}, {0, 0.0}});
  counts.clear();
  for (int i = 0; i < 20000; ++i) ++counts[select_repair_parent(zeros, rng).record_id];
  CHECK(counts["b3-d1"] / 20000.0 == doctest::Approx(0.5).epsilon(0.05));

  CHECK(error_kind([&] { select_repair_parent(BranchLocalMemory(4), rng); }) == ErrorKind::EmptyMemory);
  BranchLocalMemory valid = branch(5, {{0, 0.1}, {1, 0.5}});
  CHECK(error_kind([&] { select_repair_parent(valid, rng); }) == ErrorKind::HasValidRecord);
}

TEST_CASE("repair sampling is reproducible from the seed") {
  BranchLocalMemory m = branch(1, {{0, 0.2}, {0, 0.6}, {0, 0.2}});
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(select_repair_parent(m, a).record_id == select_repair_parent(m, b).record_id);
}

TEST_CASE("improve parent selection") {
  CHECK(select_improve_parent(branch(1, {{1, 0.3}, {1, 0.7}})).record_id == "b1-d2");
  CHECK(select_improve_parent(branch(1, {{1, 0.5}, {1, 0.5}})).record_id == "b1-d1");
  CHECK(select_improve_parent(branch(1, {{0, 0.9}, {1, 0.2}})).record_id == "b1-d2");
  CHECK(error_kind([] { select_improve_parent(branch(1, {{0, 0.9}})); }) == ErrorKind::NoValidRecord);
}

TEST_CASE("final selection prefers valid records") {
  std::vector<BranchLocalMemory> ms{branch(1, {{0, 0.9}, {1, 0.4}}), branch(2, {{1, 0.6}, {0, 0.95}})};
  ArtifactStore store;
  for (const auto& m : ms) {
    for (const Record& r : m.records()) store.put(r.solver_ref, "source of " + r.record_id);
  }
  auto [best, source] = final_selection(ms, store);
  CHECK(best.record_id == "b2-d1");
  CHECK(source == "source of b2-d1");

  std::vector<BranchLocalMemory> invalid{branch(1, {{0, 0.0}, {0, 0.4}})};
  CHECK(final_selection(invalid, store).first.record_id == "b1-d2");

  std::vector<BranchLocalMemory> tie{branch(1, {{1, 0.5}}), branch(2, {{1, 0.5}})};
  CHECK(final_selection(tie, store).first.record_id == "b1-d1");

  std::vector<BranchLocalMemory> none{BranchLocalMemory(1)};
  CHECK(error_kind([&] { final_selection(none, store); }) == ErrorKind::EmptySearch);
}

TEST_CASE("global memory") {
  std::vector<GlobalMemoryEntry> global;
  add_global_entry(global, make_global_entry(1, "greedy insertion", "capacity overflow", "check loads first"));
  CHECK(global.size() == 1);
  CHECK(global[0].token_estimate == 7);
  CHECK(error_kind([&] { add_global_entry(global, make_global_entry(1, "a", "b", "c")); }) ==
        ErrorKind::DuplicateBranch);
  for (int b = 2; b <= 6; ++b) add_global_entry(global, make_global_entry(b, "a", "b", "c"));
  CHECK(global.size() == 6);
  CHECK(global_entry_from_json(global_entry_to_json(global[0])) == global[0]);
  CHECK(whitespace_tokens("  one\ttwo\n three ") == 3);
}

TEST_CASE("artifact store is write once and persists") {
  auto dir = std::filesystem::temp_directory_path() / "heursynth_store_test";
  std::filesystem::remove_all(dir);
  {
    ArtifactStore store(dir);
    store.put("b1-d1.py", "print(1)\n");
    CHECK(error_kind([&] { store.put("b1-d1.py", "x"); }) == ErrorKind::DuplicateId);
    CHECK(error_kind([&] { store.get("nope"); }) == ErrorKind::MissingReference);
  }
  ArtifactStore loaded = ArtifactStore::load(dir);
  CHECK(loaded.get("b1-d1.py") == "print(1)\n");
  std::filesystem::remove_all(dir);
}
