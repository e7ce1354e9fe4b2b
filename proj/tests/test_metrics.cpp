#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "trajsample/errors.hpp"
#include "trajsample/metrics.hpp"
#include "trajsample/rng.hpp"

#include "helpers.hpp"

using namespace trajsample;
using testutil::line;
using testutil::shifted;

namespace {

Trajectory random_trajectory(Rng& rng, int horizon) {
  Trajectory out(static_cast<std::size_t>(horizon));
  Vec2 pos{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
  for (Vec2& point : out) {
    pos += Vec2{rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 1.0)};
    point = pos;
  }
  return out;
}

}  // namespace

TEST_CASE("ade on hand cases") {
  const Trajectory ref = {{0, 0}, {1, 0}};
  CHECK(ade(ref, ref) == 0.0);
  CHECK(ade(ref, Trajectory{{0, 1}, {1, 1}}) == 1.0);
  CHECK(ade(ref, Trajectory{{0, 0}, {1, 2}}) == 1.0);
}

TEST_CASE("fde on hand cases") {
  const Trajectory ref = {{0, 0}, {1, 0}};
  CHECK(fde(ref, ref) == 0.0);
  CHECK(fde(ref, Trajectory{{5, 5}, {1, 2}}) == 2.0);
  CHECK(fde(Trajectory{{1, 1}, {0, 0}}, Trajectory{{9, 9}, {3, 4}}) == 5.0);
}

TEST_CASE("pairwise metrics demand equal horizons") {
  const Trajectory two = line({0, 0}, {1, 0}, 2);
  const Trajectory three = line({0, 0}, {1, 0}, 3);
  CHECK_THROWS_AS(ade(two, three), HorizonMismatch);
  CHECK_THROWS_AS(fde(three, two), HorizonMismatch);
  CHECK_THROWS_AS(ade(Trajectory{}, Trajectory{}), HorizonMismatch);
}

TEST_CASE("min_ade_k scores the k-prefix") {
  const Trajectory ref = line({0, 0}, {1, 0}, 2);

  CandidateSet with_member(5, shifted(ref, {0, 7}));
  with_member[2] = ref;
  CHECK(min_ade_k(ref, with_member, 5) == 0.0);

  // Constant offsets give prefix ADEs of exactly [2, 1, 3].
  const CandidateSet graded = {shifted(ref, {0, 2}), shifted(ref, {0, 1}),
                               shifted(ref, {0, 3})};
  CHECK(min_ade_k(ref, graded, 2) == 1.0);
  CHECK(min_ade_k(ref, graded, 1) == 2.0);
}

TEST_CASE("min_fde_k scores the k-prefix") {
  const Trajectory ref = line({0, 0}, {1, 0}, 3);

  CandidateSet touching = {shifted(ref, {0, 4})};
  touching[0].back() = ref.back();
  CHECK(min_fde_k(ref, touching, 1) == 0.0);

  const CandidateSet graded = {shifted(ref, {0, 4}), shifted(ref, {0, 2}),
                               shifted(ref, {0, 6})};
  CHECK(min_fde_k(ref, graded, 3) == 2.0);
  CHECK(min_fde_k(ref, graded, 2) == 2.0);
}

TEST_CASE("prefix metrics validate k") {
  const Trajectory ref = line({0, 0}, {1, 0}, 2);
  const CandidateSet two = {ref, shifted(ref, {0, 1})};
  CHECK_THROWS_AS(min_ade_k(ref, two, 3), KExceedsSetSize);
  CHECK_THROWS_AS(min_fde_k(ref, two, 5), KExceedsSetSize);
  CHECK_THROWS_AS(min_ade_k(ref, two, 0), std::invalid_argument);
}

TEST_CASE("min_ade_k is non-increasing in k") {
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const int horizon = 2 + static_cast<int>(rng.uniform_index(10));
    const Trajectory ref = random_trajectory(rng, horizon);
    CandidateSet candidates;
    const int count = 1 + static_cast<int>(rng.uniform_index(6));
    for (int i = 0; i < count; ++i) {
      candidates.push_back(random_trajectory(rng, horizon));
    }
    double previous = min_ade_k(ref, candidates, 1);
    for (int k = 2; k <= count; ++k) {
      const double current = min_ade_k(ref, candidates, k);
      CHECK(current <= previous);
      previous = current;
    }
  }
}

TEST_CASE("min_ade_k is zero exactly when the prefix contains the reference") {
  Rng rng(55);
  const Trajectory ref = random_trajectory(rng, 6);
  CandidateSet strangers = {random_trajectory(rng, 6),
                            random_trajectory(rng, 6)};
  CHECK(min_ade_k(ref, strangers, 2) > 0.0);

  CandidateSet with_ref = strangers;
  with_ref.push_back(ref);
  CHECK(min_ade_k(ref, with_ref, 3) == 0.0);
  // The match sits outside the 2-prefix, so it must not count.
  CHECK(min_ade_k(ref, with_ref, 2) > 0.0);
}

TEST_CASE("ade is symmetric and satisfies the triangle inequality") {
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const int horizon = 1 + static_cast<int>(rng.uniform_index(12));
    const Trajectory a = random_trajectory(rng, horizon);
    const Trajectory b = random_trajectory(rng, horizon);
    const Trajectory c = random_trajectory(rng, horizon);
    CHECK(ade(a, b) == ade(b, a));
    CHECK(ade(a, c) <= ade(a, b) + ade(b, c) + 1e-12);
  }
}

TEST_CASE("fde never exceeds horizon times ade") {
  Rng rng(88);
  for (int trial = 0; trial < 30; ++trial) {
    const int horizon = 1 + static_cast<int>(rng.uniform_index(12));
    const Trajectory a = random_trajectory(rng, horizon);
    const Trajectory b = random_trajectory(rng, horizon);
    CHECK(fde(a, b) <= static_cast<double>(horizon) * ade(a, b) + 1e-12);
  }
}

TEST_CASE("aggregate averages per-scenario rows") {
  const std::vector<int> ks = {1};

  MetricReport single = aggregate({{"a", {1.5}, {2.5}}}, ks);
  CHECK(single.mean_min_ade[0] == 1.5);
  CHECK(single.mean_min_fde[0] == 2.5);
  CHECK(single.scenario_count() == 1);

  MetricReport pair = aggregate({{"a", {1.0}, {3.0}}, {"b", {3.0}, {1.0}}}, ks);
  CHECK(pair.mean_min_ade[0] == 2.0);
  CHECK(pair.mean_min_fde[0] == 2.0);

  std::vector<ScenarioMetrics> many(100, {"x", {0.375}, {0.75}});
  MetricReport same = aggregate(std::move(many), ks);
  CHECK(same.mean_min_ade[0] == 0.375);
  CHECK(same.mean_min_fde[0] == 0.75);
}

TEST_CASE("aggregate stays within 1e-9 of the arithmetic mean") {
  Rng rng(99);
  std::vector<ScenarioMetrics> rows;
  double sum = 0.0;
  for (int i = 0; i < 137; ++i) {
    const double value = rng.uniform(0.0, 5.0);
    sum += value;
    rows.push_back({"s" + std::to_string(i), {value}, {value}});
  }
  const MetricReport report = aggregate(std::move(rows), {3});
  CHECK(std::abs(report.mean_min_ade[0] - sum / 137.0) <= 1e-9);
}

TEST_CASE("aggregate rejects rows that do not match the k list") {
  CHECK_THROWS_AS(aggregate({{"a", {1.0}, {1.0}}}, {1, 5}),
                  std::invalid_argument);
}

TEST_CASE("score_candidates needs ground truth") {
  Scenario scenario;
  scenario.scenario_id = "no-gt";
  scenario.mixture = testutil::single_model({{1.0, line({0, 0}, {1, 0}, 2)}});
  CHECK_THROWS_AS(score_candidates(scenario, {line({0, 0}, {1, 0}, 2)}, {1}),
                  MissingGroundTruth);

  scenario.ground_truth = line({0, 0}, {1, 0}, 2);
  const ScenarioMetrics row =
      score_candidates(scenario, {line({0, 0}, {1, 0}, 2)}, {1});
  CHECK(row.min_ade[0] == 0.0);
  CHECK(row.min_fde[0] == 0.0);
}
