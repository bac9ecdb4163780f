#include <doctest.h>

#include <random>

#include "heursynth/common/error.hpp"
#include "heursynth/eval/score.hpp"
#include "fixtures.hpp"

using namespace heursynth;

namespace {
RawOutcome bad() { return {false, std::nullopt, Violation{"overlap", {}, ""}}; }
}  // namespace

TEST_CASE("normalize_score worked examples") {
  CHECK(normalize_score(RawOutcome::ok(100), 100) == InstanceScore{1, 1.0});
  CHECK(normalize_score(RawOutcome::ok(50), 100) == InstanceScore{1, 0.5});
  CHECK(normalize_score(bad(), 100) == InstanceScore{0, 0.0});
  CHECK(normalize_score(RawOutcome::ok(0), 0) == InstanceScore{1, 1.0});
}

TEST_CASE("normalize_score uses magnitudes") {
  CHECK(normalize_score(RawOutcome::ok(-50), 100).score == doctest::Approx(0.5));
  CHECK(normalize_score(RawOutcome::ok(50), -100).score == doctest::Approx(0.5));
  CHECK(normalize_score(RawOutcome::ok(0), 7).score == 0.0);
  CHECK(normalize_score(RawOutcome::ok(7), 0) == InstanceScore{1, 0.0});
}

TEST_CASE("normalize_score is symmetric and bounded") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 2000; ++i) {
    double a = u(rng), b = u(rng);
    InstanceScore s = normalize_score(RawOutcome::ok(a), b);
    CHECK(s.score == normalize_score(RawOutcome::ok(b), a).score);
    CHECK(s.score >= 0.0);
    CHECK(s.score <= 1.0);
  }
}

TEST_CASE("dataset_metrics means") {
  std::vector<InstanceScore> two{{1, 1.0}, {0, 0.0}};
  DatasetMetrics m = dataset_metrics(two);
  CHECK(m.mean_valid == 0.5);
  CHECK(m.mean_score == 0.5);
  CHECK(m.per_instance == two);

  std::vector<InstanceScore> ones(3, InstanceScore{1, 1.0});
  CHECK(dataset_metrics(ones).mean_score == 1.0);
  CHECK(dataset_metrics(ones).mean_valid == 1.0);

  std::vector<InstanceScore> none;
  CHECK(testing::error_kind([&] { dataset_metrics(none); }) == ErrorKind::EmptyList);
}
