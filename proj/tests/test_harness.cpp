#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trajsample/errors.hpp"
#include "trajsample/harness.hpp"
#include "trajsample/rng.hpp"

#include "helpers.hpp"

using namespace trajsample;
using testutil::line;

namespace {

/// Small synthetic dataset with the reference ensemble emulation.
std::vector<Scenario> small_dataset(int count, int proposals_per_model = 5,
                                    std::uint64_t master_seed = 314) {
  WorldConfig world;
  world.horizon = 8;
  return generate_dataset(world, default_ensemble(proposals_per_model), count,
                          master_seed);
}

std::vector<SamplerSpec> all_specs() {
  std::vector<SamplerSpec> specs;
  for (const std::string& name : known_sampler_names()) {
    specs.push_back(make_sampler_spec(name));
  }
  return specs;
}

}  // namespace

TEST_CASE("make_sampler_spec covers the canonical names") {
  const std::vector<std::string> names = known_sampler_names();
  REQUIRE(names.size() == 7);
  for (const std::string& name : names) {
    const SamplerSpec spec = make_sampler_spec(name);
    CHECK(spec.name == name);
  }
  CHECK(make_sampler_spec("uniform").kind == SamplerKind::Uniform);
  CHECK(make_sampler_spec("categorical").kind == SamplerKind::Categorical);
  CHECK(make_sampler_spec("topk").kind == SamplerKind::Topk);
  CHECK(make_sampler_spec("kmeans").kind == SamplerKind::KMeans);
  CHECK(make_sampler_spec("nms").kind == SamplerKind::Nms);
  CHECK(make_sampler_spec("nms_kmeans").kind == SamplerKind::NmsKMeans);
  CHECK(make_sampler_spec("ours").kind == SamplerKind::RiskOptimizer);

  CHECK_THROWS_AS(make_sampler_spec("argmax"), ConfigError);
  try {
    make_sampler_spec("argmax");
  } catch (const ConfigError& error) {
    CHECK(error.field() == "sampler");
  }
}

TEST_CASE("run_sampler returns the requested count from every sampler") {
  Rng rng(17);
  const ProposalMixture mixture = testutil::random_mixture(rng, 3, 4, 6);
  for (const SamplerSpec& spec : all_specs()) {
    CAPTURE(spec.name);
    const CandidateSet first = run_sampler(spec, mixture, 4, 11);
    const CandidateSet second = run_sampler(spec, mixture, 4, 11);
    REQUIRE(first.size() == 4);
    REQUIRE(second.size() == 4);
    for (std::size_t s = 0; s < first.size(); ++s) {
      CHECK(testutil::same_trajectory(first[s], second[s]));
    }
    for (const Trajectory& candidate : first) {
      CHECK(candidate.size() == 6);
    }
  }
}

TEST_CASE("scenario_seed depends on both inputs") {
  CHECK(scenario_seed(42, "scn000000") == scenario_seed(42, "scn000000"));
  CHECK(scenario_seed(42, "scn000000") != scenario_seed(43, "scn000000"));
  CHECK(scenario_seed(42, "scn000000") != scenario_seed(42, "scn000001"));
}

TEST_CASE("evaluate_sampler scores the k-prefix against the ground truth") {
  const Trajectory best = line({0, 0}, {1, 0}, 5);
  const Trajectory other = line({0, 3}, {1, 0}, 5);

  Scenario scenario;
  scenario.scenario_id = "hand";
  scenario.mixture = testutil::single_model({{0.8, best}, {0.2, other}});
  scenario.ground_truth = best;

  EvalOptions options;
  options.num_candidates = 1;
  options.ks = {1};

  const MetricReport report =
      evaluate_sampler({scenario}, make_sampler_spec("topk"), options);
  REQUIRE(report.scenario_count() == 1);
  CHECK(report.mean_min_ade[0] == 0.0);
  CHECK(report.mean_min_fde[0] == 0.0);
  CHECK(report.per_scenario[0].scenario_id == "hand");

  SUBCASE("a scenario without ground truth cannot be scored") {
    scenario.ground_truth.reset();
    CHECK_THROWS_AS(
        evaluate_sampler({scenario}, make_sampler_spec("topk"), options),
        MissingGroundTruth);
  }
}

TEST_CASE("the optimizer collapses duplicate pools onto the shared proposal") {
  const Trajectory proposal = line({0, 0.5}, {1.5, 0.1}, 6);
  Scenario scenario;
  scenario.scenario_id = "dup";
  scenario.mixture = testutil::single_model(
      {{0.4, proposal}, {0.3, proposal}, {0.3, proposal}});
  scenario.ground_truth = testutil::shifted(proposal, {0, 1});

  EvalOptions options;
  options.num_candidates = 2;
  options.ks = {1};
  const MetricReport report =
      evaluate_sampler({scenario}, make_sampler_spec("ours"), options);
  CHECK(report.mean_min_ade[0] == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("compare_samplers replays evaluate_sampler per row") {
  const std::vector<Scenario> dataset = small_dataset(6);
  EvalOptions options;
  options.num_candidates = 5;
  options.ks = {1, 5};

  const std::vector<SamplerSpec> specs = {make_sampler_spec("topk"),
                                          make_sampler_spec("kmeans"),
                                          make_sampler_spec("ours")};
  const ComparisonTable table = compare_samplers(dataset, specs, options);
  REQUIRE(table.rows.size() == specs.size());
  CHECK(table.ks == options.ks);

  for (std::size_t row = 0; row < specs.size(); ++row) {
    CHECK(table.rows[row].sampler == specs[row].name);
    CHECK(table.rows[row].wall_seconds >= 0.0);
    const MetricReport direct =
        evaluate_sampler(dataset, specs[row], options);
    for (std::size_t i = 0; i < options.ks.size(); ++i) {
      CHECK(table.rows[row].report.mean_min_ade[i] == direct.mean_min_ade[i]);
      CHECK(table.rows[row].report.mean_min_fde[i] == direct.mean_min_fde[i]);
    }
  }
}

TEST_CASE("comparison CSV is stable and excludes wall-clock noise") {
  const std::vector<Scenario> dataset = small_dataset(5);
  EvalOptions options;
  options.num_candidates = 3;
  options.ks = {1, 3};
  const std::vector<SamplerSpec> specs = {make_sampler_spec("topk"),
                                          make_sampler_spec("nms_kmeans")};

  const std::string first = to_csv(compare_samplers(dataset, specs, options));
  const std::string second = to_csv(compare_samplers(dataset, specs, options));
  CHECK(first == second);
  CHECK(first.rfind("sampler,min_ade_1,min_ade_3,min_fde_1,min_fde_3\n", 0) == 0);
  CHECK(first.find("topk,") != std::string::npos);
  CHECK(first.find("nms_kmeans,") != std::string::npos);
  CHECK(std::count(first.begin(), first.end(), '\n') == 3);
}

TEST_CASE("parallel evaluation reproduces the serial result") {
  const std::vector<Scenario> dataset = small_dataset(12);
  EvalOptions serial;
  serial.num_candidates = 5;
  serial.ks = {1, 5};
  serial.threads = 1;
  EvalOptions parallel = serial;
  parallel.threads = 4;

  const std::vector<SamplerSpec> specs = all_specs();
  const std::string serial_csv = to_csv(compare_samplers(dataset, specs, serial));
  const std::string parallel_csv =
      to_csv(compare_samplers(dataset, specs, parallel));
  CHECK(serial_csv == parallel_csv);

  SUBCASE("errors surface from worker threads") {
    std::vector<Scenario> broken = dataset;
    broken[7].ground_truth.reset();
    CHECK_THROWS_AS(compare_samplers(broken, specs, parallel),
                    MissingGroundTruth);
  }
}

TEST_CASE("proposal_count_sweep") {
  WorldConfig world;
  world.horizon = 8;
  EnsembleEmulation ensemble = default_ensemble(5);
  EvalOptions options;
  options.num_candidates = 5;
  options.ks = {1, 5};
  const std::vector<SamplerSpec> specs = {make_sampler_spec("topk"),
                                          make_sampler_spec("kmeans")};

  SUBCASE("a single count matches a direct comparison on the same data") {
    const SweepResult sweep =
        proposal_count_sweep(world, ensemble, 5, {15}, specs, options);
    CHECK(sweep.axis == "proposal_count");
    REQUIRE(sweep.xs == std::vector<double>{15.0});

    EnsembleEmulation direct_ensemble = ensemble;
    direct_ensemble.proposals_per_model = 5;  // 15 pooled over 3 models
    const ComparisonTable direct = compare_samplers(
        generate_dataset(world, direct_ensemble, 5, options.master_seed),
        specs, options);

    for (const SweepCurve& curve : sweep.curves) {
      if (curve.metric.rfind("delta_", 0) == 0) {
        CHECK(curve.values[0] == 0.0);
        continue;
      }
      const auto row = std::find_if(
          direct.rows.begin(), direct.rows.end(),
          [&](const ComparisonRow& r) { return r.sampler == curve.sampler; });
      REQUIRE(row != direct.rows.end());
      const std::size_t ki = curve.metric.back() == '1' ? 0 : 1;
      if (curve.metric.rfind("min_ade_", 0) == 0) {
        CHECK(curve.values[0] == row->report.mean_min_ade[ki]);
      } else if (curve.metric.rfind("min_fde_", 0) == 0) {
        CHECK(curve.values[0] == row->report.mean_min_fde[ki]);
      }
    }
  }

  SUBCASE("ground truth is shared across counts") {
    const SweepResult sweep =
        proposal_count_sweep(world, ensemble, 4, {15, 30}, specs, options);
    REQUIRE(sweep.xs.size() == 2);
    for (const SweepCurve& curve : sweep.curves) {
      REQUIRE(curve.values.size() == 2);
      for (double v : curve.values) CHECK(std::isfinite(v));
    }
  }

  SUBCASE("counts must be positive multiples of the model count") {
    CHECK_THROWS_AS(
        proposal_count_sweep(world, ensemble, 4, {16}, specs, options),
        std::invalid_argument);
    CHECK_THROWS_AS(
        proposal_count_sweep(world, ensemble, 4, {0}, specs, options),
        std::invalid_argument);
  }
}

TEST_CASE("nms_threshold_sweep") {
  const std::vector<Scenario> dataset = small_dataset(5);
  EvalOptions options;
  options.num_candidates = 5;
  options.ks = {1, 5};

  SUBCASE("a single threshold matches a configured nms_kmeans row") {
    const SweepResult sweep = nms_threshold_sweep(dataset, {0.5}, options);
    CHECK(sweep.axis == "nms_threshold");
    REQUIRE(sweep.xs == std::vector<double>{0.5});

    SamplerSpec spec = make_sampler_spec("nms_kmeans");
    spec.nms.threshold = 0.5;
    const MetricReport direct = evaluate_sampler(dataset, spec, options);
    for (const SweepCurve& curve : sweep.curves) {
      if (curve.metric == "min_ade_5") {
        CHECK(curve.values[0] == direct.mean_min_ade[1]);
      }
    }
  }

  SUBCASE("thresholds must be positive") {
    CHECK_THROWS_AS(nms_threshold_sweep(dataset, {-1.0}, options),
                    std::invalid_argument);
  }

  SUBCASE("sweep CSV is line-oriented") {
    const std::string csv =
        to_csv(nms_threshold_sweep(dataset, {0.5, 1.0}, options));
    CHECK(csv.rfind("x,sampler,metric,value\n", 0) == 0);
    CHECK(csv.find("\n0.5,nms_kmeans,min_ade_1,") != std::string::npos);
    CHECK(csv.find("\n1,nms_kmeans,min_ade_1,") != std::string::npos);
  }
}
