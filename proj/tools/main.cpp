// Command-line front end: generate synthetic datasets, run samplers, compare
// them, sweep proposal counts and NMS thresholds, and verify the optimizer
// against the oracles. Configuration comes from flags and/or a JSON config
// file (flags win); TRAJSAMPLE_CONFIG may set the default config path.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trajsample/errors.hpp"
#include "trajsample/harness.hpp"
#include "trajsample/io.hpp"
#include "trajsample/metrics.hpp"
#include "trajsample/oracles.hpp"
#include "trajsample/rng.hpp"

namespace ts = trajsample;
using json = nlohmann::json;

namespace {

struct RunConfig {
  // evaluation
  int num_candidates = 10;
  std::vector<int> ks = {1, 5, 10};
  std::uint64_t master_seed = 42;
  int threads = 1;
  std::vector<std::string> samplers = {"uniform",    "categorical", "topk",
                                       "kmeans",     "nms",         "nms_kmeans",
                                       "ours"};
  // sampler configuration shared by all rows that use it
  ts::LossSpec loss;
  ts::OptimizerConfig optimizer;
  ts::NmsConfig nms;
  ts::KMeansConfig kmeans;
  // synthetic world
  ts::WorldConfig world;
  ts::EnsembleEmulation ensemble = ts::default_ensemble();
  // command inputs
  int count = 500;
  std::vector<int> counts = {30, 60, 90};
  std::vector<double> thresholds = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::string input;
  std::string output;
};

template <typename T>
void read_field(const json& object, const std::string& path, const char* key,
                T& out) {
  if (!object.contains(key)) return;
  try {
    object.at(key).get_to(out);
  } catch (const json::exception& e) {
    throw ts::ConfigError(path + key, e.what());
  }
}

void check_keys(const json& object, const std::string& path,
                std::initializer_list<const char*> known) {
  for (const auto& item : object.items()) {
    bool ok = false;
    for (const char* key : known) {
      if (item.key() == key) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ts::ConfigError(path + item.key(), "unknown field");
  }
}

ts::LossKind parse_loss_kind(const std::string& text) {
  if (text == "min_ade") return ts::LossKind::MinAde;
  if (text == "min_fde") return ts::LossKind::MinFde;
  throw ts::ConfigError("loss.kind", "expected min_ade or min_fde, got " + text);
}

ts::InitStrategy parse_init(const std::string& text) {
  if (text == "categorical") return ts::InitStrategy::CategoricalDraw;
  if (text == "uniform") return ts::InitStrategy::UniformDraw;
  if (text == "centroid") return ts::InitStrategy::GaussianNoise;
  throw ts::ConfigError("optimizer.init",
                        "expected categorical, uniform or centroid, got " + text);
}

void load_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ts::ConfigError("config", "cannot open " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw ts::ConfigError("config", e.what());
  }
  if (!root.is_object()) throw ts::ConfigError("config", "must be a JSON object");
  check_keys(root, "",
             {"num_candidates", "ks", "master_seed", "threads", "samplers",
              "loss", "optimizer", "nms", "kmeans", "world", "ensemble",
              "count", "counts", "thresholds", "input", "output"});

  read_field(root, "", "num_candidates", config.num_candidates);
  read_field(root, "", "ks", config.ks);
  read_field(root, "", "master_seed", config.master_seed);
  read_field(root, "", "threads", config.threads);
  read_field(root, "", "samplers", config.samplers);
  read_field(root, "", "count", config.count);
  read_field(root, "", "counts", config.counts);
  read_field(root, "", "thresholds", config.thresholds);
  read_field(root, "", "input", config.input);
  read_field(root, "", "output", config.output);

  if (root.contains("loss")) {
    const json& loss = root.at("loss");
    check_keys(loss, "loss.", {"kind", "k"});
    if (loss.contains("kind")) {
      config.loss.kind = parse_loss_kind(loss.at("kind").get<std::string>());
    }
    read_field(loss, "loss.", "k", config.loss.k);
  }
  if (root.contains("optimizer")) {
    const json& opt = root.at("optimizer");
    check_keys(opt, "optimizer.",
               {"learning_rate", "steps", "beta1", "beta2", "epsilon", "init",
                "jitter_sigma", "keep_best_iterate", "early_stop"});
    read_field(opt, "optimizer.", "learning_rate", config.optimizer.learning_rate);
    read_field(opt, "optimizer.", "steps", config.optimizer.steps);
    read_field(opt, "optimizer.", "beta1", config.optimizer.beta1);
    read_field(opt, "optimizer.", "beta2", config.optimizer.beta2);
    read_field(opt, "optimizer.", "epsilon", config.optimizer.epsilon);
    if (opt.contains("init")) {
      config.optimizer.init = parse_init(opt.at("init").get<std::string>());
    }
    read_field(opt, "optimizer.", "jitter_sigma", config.optimizer.jitter_sigma);
    read_field(opt, "optimizer.", "keep_best_iterate",
               config.optimizer.keep_best_iterate);
    read_field(opt, "optimizer.", "early_stop", config.optimizer.early_stop);
  }
  if (root.contains("nms")) {
    const json& nms = root.at("nms");
    check_keys(nms, "nms.", {"threshold"});
    read_field(nms, "nms.", "threshold", config.nms.threshold);
  }
  if (root.contains("kmeans")) {
    const json& km = root.at("kmeans");
    check_keys(km, "kmeans.", {"max_iters"});
    read_field(km, "kmeans.", "max_iters", config.kmeans.max_iters);
  }
  if (root.contains("world")) {
    const json& world = root.at("world");
    check_keys(world, "world.",
               {"horizon", "timestep", "maneuver_prior", "speed_min",
                "speed_max", "gt_noise_sigma"});
    read_field(world, "world.", "horizon", config.world.horizon);
    read_field(world, "world.", "timestep", config.world.timestep);
    if (world.contains("maneuver_prior")) {
      std::vector<double> prior;
      read_field(world, "world.", "maneuver_prior", prior);
      if (prior.size() != ts::kManeuverCount) {
        throw ts::ConfigError("world.maneuver_prior",
                              "expected " + std::to_string(ts::kManeuverCount) +
                                  " entries");
      }
      std::copy(prior.begin(), prior.end(), config.world.maneuver_prior.begin());
    }
    read_field(world, "world.", "speed_min", config.world.speed_min);
    read_field(world, "world.", "speed_max", config.world.speed_max);
    read_field(world, "world.", "gt_noise_sigma", config.world.gt_noise_sigma);
  }
  if (root.contains("ensemble")) {
    const json& ens = root.at("ensemble");
    check_keys(ens, "ensemble.", {"proposals_per_model", "models"});
    read_field(ens, "ensemble.", "proposals_per_model",
               config.ensemble.proposals_per_model);
    if (ens.contains("models")) {
      if (!ens.at("models").is_array()) {
        throw ts::ConfigError("ensemble.models", "must be an array");
      }
      config.ensemble.models.clear();
      std::size_t index = 0;
      for (const json& entry : ens.at("models")) {
        const std::string path =
            "ensemble.models[" + std::to_string(index++) + "].";
        check_keys(entry, path,
                   {"model_id", "coverage", "bias", "noise_sigma", "temperature"});
        ts::ModelEmulation model;
        read_field(entry, path, "model_id", model.model_id);
        read_field(entry, path, "coverage", model.coverage);
        if (entry.contains("bias")) {
          std::vector<double> bias;
          read_field(entry, path, "bias", bias);
          if (bias.size() != 2) throw ts::ConfigError(path + "bias", "expected [x, y]");
          model.bias = {bias[0], bias[1]};
        }
        read_field(entry, path, "noise_sigma", model.noise_sigma);
        read_field(entry, path, "temperature", model.temperature);
        config.ensemble.models.push_back(std::move(model));
      }
    }
  }
}

/// Locates --config in raw argv (before CLI11 runs) so config-file values can
/// serve as flag defaults. TRAJSAMPLE_CONFIG supplies the default path only.
std::string find_config_path(int argc, char** argv) {
  std::string path;
  if (const char* env = std::getenv("TRAJSAMPLE_CONFIG")) path = env;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      path = argv[i + 1];
    } else if (arg.rfind("--config=", 0) == 0) {
      path = arg.substr(9);
    }
  }
  return path;
}

ts::SamplerSpec build_spec(const std::string& name, const RunConfig& config) {
  ts::SamplerSpec spec = ts::make_sampler_spec(name);
  spec.nms = config.nms;
  spec.kmeans.max_iters = config.kmeans.max_iters;
  spec.optimizer = config.optimizer;
  spec.loss = config.loss;
  return spec;
}

std::vector<ts::SamplerSpec> build_specs(const RunConfig& config) {
  std::vector<ts::SamplerSpec> specs;
  specs.reserve(config.samplers.size());
  for (const std::string& name : config.samplers) {
    specs.push_back(build_spec(name, config));
  }
  return specs;
}

ts::EvalOptions eval_options(const RunConfig& config) {
  ts::EvalOptions options;
  options.num_candidates = config.num_candidates;
  options.ks = config.ks;
  options.master_seed = config.master_seed;
  options.threads = config.threads;
  return options;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ts::Error("cannot open for writing: " + path);
  out << text;
  if (!out) throw ts::Error("write failed: " + path);
}

int run_generate(const RunConfig& config) {
  const std::vector<ts::Scenario> dataset = ts::generate_dataset(
      config.world, config.ensemble, config.count, config.master_seed);
  write_output(config.output, ts::serialize_scenarios(dataset));
  std::cerr << "generated " << dataset.size() << " scenarios\n";
  return 0;
}

int run_sample(const RunConfig& config, const std::string& sampler) {
  const std::vector<ts::Scenario> dataset = ts::parse_scenario_file(config.input);
  const ts::SamplerSpec spec = build_spec(sampler, config);
  std::vector<ts::NamedCandidates> rows;
  rows.reserve(dataset.size());
  for (const ts::Scenario& scenario : dataset) {
    rows.emplace_back(
        scenario.scenario_id,
        ts::run_sampler(spec, scenario.mixture, config.num_candidates,
                        ts::scenario_seed(config.master_seed, scenario.scenario_id)));
  }
  std::string text;
  for (const ts::NamedCandidates& row : rows) {
    text += ts::serialize_candidates(row);
    text += '\n';
  }
  write_output(config.output, text);
  std::cerr << "sampled " << rows.size() << " scenarios with " << sampler << "\n";
  return 0;
}

int run_compare(const RunConfig& config) {
  const std::vector<ts::Scenario> dataset = ts::parse_scenario_file(config.input);
  const ts::ComparisonTable table =
      ts::compare_samplers(dataset, build_specs(config), eval_options(config));
  write_output(config.output, ts::to_csv(table));
  for (const ts::ComparisonRow& row : table.rows) {
    std::cerr << "# " << row.sampler << ": " << ts::format_double(row.wall_seconds)
              << " s\n";
  }
  return 0;
}

int run_sweep_proposals(const RunConfig& config) {
  const ts::SweepResult sweep = ts::proposal_count_sweep(
      config.world, config.ensemble, config.count, config.counts,
      build_specs(config), eval_options(config));
  write_output(config.output, ts::to_csv(sweep));
  return 0;
}

int run_sweep_nms(const RunConfig& config) {
  const std::vector<ts::Scenario> dataset = ts::parse_scenario_file(config.input);
  const ts::SweepResult sweep =
      ts::nms_threshold_sweep(dataset, config.thresholds, eval_options(config));
  write_output(config.output, ts::to_csv(sweep));
  return 0;
}

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

ts::ProposalMixture random_mixture(ts::Rng& rng, std::size_t models,
                                   std::size_t proposals, std::size_t horizon) {
  std::vector<ts::ModelPrediction> predictions;
  for (std::size_t m = 0; m < models; ++m) {
    ts::ModelPrediction prediction;
    prediction.model_id = "m" + std::to_string(m);
    for (std::size_t n = 0; n < proposals; ++n) {
      ts::Trajectory traj(horizon);
      ts::Vec2 pos{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      for (std::size_t t = 0; t < horizon; ++t) {
        pos += ts::Vec2{rng.uniform(-1.5, 2.5), rng.uniform(-1.5, 1.5)};
        traj[t] = pos;
      }
      prediction.proposals.push_back({rng.uniform(0.05, 1.0), std::move(traj)});
    }
    predictions.push_back(std::move(prediction));
  }
  return ts::build_mixture(std::move(predictions));
}

/// Relative disagreement between two gradient tensors, coordinate-wise, with
/// a floor so zero-vs-zero compares clean.
double gradient_rel_error(const std::vector<ts::Trajectory>& a,
                          const std::vector<ts::Trajectory>& b) {
  double worst = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    for (std::size_t t = 0; t < a[c].size(); ++t) {
      const double dx = std::abs(a[c][t].x - b[c][t].x);
      const double dy = std::abs(a[c][t].y - b[c][t].y);
      const double sx = std::max({std::abs(a[c][t].x), std::abs(b[c][t].x), 1e-6});
      const double sy = std::max({std::abs(a[c][t].y), std::abs(b[c][t].y), 1e-6});
      worst = std::max({worst, dx / sx, dy / sy});
    }
  }
  return worst;
}

/// True when every proposal's best candidate beats its runner-up by a clear
/// margin, i.e. the risk is differentiable at this configuration.
bool strict_argmin(const ts::ProposalMixture& mixture,
                   const ts::CandidateSet& candidates, const ts::LossSpec& loss) {
  if (candidates.size() < 2) return true;
  const int k = loss.k == 0 ? static_cast<int>(candidates.size()) : loss.k;
  for (std::size_t p = 0; p < mixture.size(); ++p) {
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    for (int c = 0; c < k; ++c) {
      const double d =
          loss.kind == ts::LossKind::MinAde
              ? ts::ade(mixture.trajectory(p), candidates[static_cast<std::size_t>(c)])
              : ts::fde(mixture.trajectory(p), candidates[static_cast<std::size_t>(c)]);
      if (d < best) {
        second = best;
        best = d;
      } else if (d < second) {
        second = d;
      }
    }
    if (second - best <= 1e-3) return false;
  }
  return true;
}

std::vector<VerifyCheck> run_oracle_suite(const std::vector<ts::Scenario>& fixture,
                                          int instances, std::uint64_t seed) {
  std::vector<VerifyCheck> checks;
  ts::Rng rng(seed);

  // Pool of small mixtures: the fixture's scenarios plus random instances.
  std::vector<ts::ProposalMixture> mixtures;
  for (const ts::Scenario& scenario : fixture) mixtures.push_back(scenario.mixture);
  while (mixtures.size() < static_cast<std::size_t>(instances)) {
    mixtures.push_back(
        random_mixture(rng, 1 + rng.uniform_index(3), 1 + rng.uniform_index(4),
                       2 + rng.uniform_index(8)));
  }

  {
    double worst = 0.0;
    int used = 0;
    for (const ts::ProposalMixture& mixture : mixtures) {
      const int S = std::min<std::size_t>(3, mixture.size());
      ts::CandidateSet candidates = ts::sample_topk(mixture, S);
      ts::OptimizerConfig nudge;
      nudge.seed = rng.next_u64();
      for (ts::Trajectory& c : candidates) {
        for (ts::Vec2& point : c) {
          point += ts::Vec2{0.05 * rng.normal(), 0.05 * rng.normal()};
        }
      }
      const ts::LossSpec loss{ts::LossKind::MinAde, S};
      if (!strict_argmin(mixture, candidates, loss)) continue;
      ++used;
      worst = std::max(
          worst, gradient_rel_error(
                     ts::risk_subgradient(mixture, candidates, loss),
                     ts::finite_difference_gradient(mixture, candidates, loss)));
    }
    std::ostringstream detail;
    detail << "max relative error " << worst << " over " << used
           << " strict instances";
    checks.push_back({"gradient-vs-finite-differences", worst <= 1e-4 && used > 0,
                      detail.str()});
  }

  {
    double worst_gap = 0.0;
    for (const ts::ProposalMixture& mixture : mixtures) {
      const ts::Trajectory median = ts::geometric_median_oracle(mixture);
      const ts::LossSpec loss{ts::LossKind::MinAde, 1};
      ts::OptimizerConfig config;
      config.learning_rate = 0.05;
      config.steps = 20000;
      // Decay to ~1e-9 by the last step; Adam's resolution tracks its rate.
      config.lr_decay = std::pow(1e-9 / config.learning_rate,
                                 1.0 / static_cast<double>(config.steps));
      config.init = ts::InitStrategy::GaussianNoise;
      config.jitter_sigma = 0.0;
      config.seed = rng.next_u64();
      const auto [candidates, trace] = ts::optimize(mixture, 1, loss, config);
      const double median_risk = ts::risk(mixture, {median}, loss);
      worst_gap = std::max(worst_gap, trace.final_risk - median_risk);
    }
    std::ostringstream detail;
    detail << "worst objective excess " << worst_gap << " over "
           << mixtures.size() << " instances";
    checks.push_back({"optimizer-vs-geometric-median", worst_gap <= 1e-6,
                      detail.str()});
  }

  {
    // Dominance holds for the continuous optimum, not for every descent
    // path, so each instance gets a few fresh starts before it counts as
    // a miss.
    constexpr int kSubsetInstances = 100;
    constexpr int kRestarts = 5;
    int dominated = 0;
    for (int i = 0; i < kSubsetInstances; ++i) {
      const ts::ProposalMixture mixture =
          random_mixture(rng, 1 + rng.uniform_index(2), 1 + rng.uniform_index(4),
                         2 + rng.uniform_index(8));
      const int S = static_cast<int>(
          std::min<std::size_t>(1 + rng.uniform_index(3), mixture.size()));
      const ts::LossSpec loss{ts::LossKind::MinAde, S};
      const ts::SubsetOracleResult oracle =
          ts::brute_force_subset_oracle(mixture, S, loss);
      for (int attempt = 0; attempt < kRestarts; ++attempt) {
        ts::OptimizerConfig config;
        config.learning_rate = 0.02;
        config.steps = 4000;
        config.lr_decay = std::pow(1e-6 / config.learning_rate,
                                   1.0 / static_cast<double>(config.steps));
        config.seed = rng.next_u64();
        const auto [candidates, trace] = ts::optimize(mixture, S, loss, config);
        if (trace.final_risk <= oracle.risk + 1e-6) {
          ++dominated;
          break;
        }
      }
    }
    std::ostringstream detail;
    detail << dominated << "/" << kSubsetInstances
           << " instances at or below the oracle";
    checks.push_back({"optimizer-vs-subset-oracle",
                      dominated * 100 >= kSubsetInstances * 95, detail.str()});
  }

  if (!fixture.empty()) {
    const std::string text = ts::serialize_scenarios(fixture);
    std::istringstream in(text);
    const std::vector<ts::Scenario> reparsed = ts::parse_scenarios(in);
    bool same = reparsed.size() == fixture.size();
    for (std::size_t i = 0; same && i < fixture.size(); ++i) {
      same = reparsed[i].scenario_id == fixture[i].scenario_id &&
             reparsed[i].ground_truth == fixture[i].ground_truth &&
             reparsed[i].mixture.size() == fixture[i].mixture.size();
      for (std::size_t p = 0; same && p < fixture[i].mixture.size(); ++p) {
        same = reparsed[i].mixture.trajectory(p) == fixture[i].mixture.trajectory(p);
      }
    }
    checks.push_back({"serialization-round-trip", same,
                      same ? "bit-exact round trip" : "round trip diverged"});
  }

  return checks;
}

int run_verify(const RunConfig& config, int instances) {
  std::vector<ts::Scenario> fixture;
  if (!config.input.empty()) fixture = ts::parse_scenario_file(config.input);
  const std::vector<VerifyCheck> checks =
      run_oracle_suite(fixture, instances, config.master_seed);
  int failures = 0;
  for (const VerifyCheck& check : checks) {
    std::cout << (check.pass ? "pass" : "FAIL") << "  " << check.name << "  ("
              << check.detail << ")\n";
    if (!check.pass) ++failures;
  }
  return failures == 0 ? 0 : 2;
}

void print_error(const std::exception& e, const char* code,
                 std::size_t line = 0, const std::string& field = "") {
  json out;
  out["error"] = code;
  out["message"] = e.what();
  if (line > 0) out["line"] = line;
  if (!field.empty()) out["field"] = field;
  std::cerr << out.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  try {
    const std::string config_path = find_config_path(argc, argv);
    if (!config_path.empty()) load_config_file(config_path, config);
  } catch (const ts::ConfigError& e) {
    print_error(e, e.code(), 0, e.field());
    return 1;
  }

  CLI::App app{"Trajectory sub-sampling from ensemble proposals"};
  app.require_subcommand(1);
  std::string config_path_flag;  // consumed by the pre-scan above
  app.add_option("--config", config_path_flag, "JSON config file");

  std::string sampler = "ours";
  int verify_instances = 20;

  auto add_eval_flags = [&](CLI::App* cmd) {
    cmd->add_option("--num-candidates,-S", config.num_candidates,
                    "candidates per scenario");
    cmd->add_option("--ks", config.ks, "k values to score")->delimiter(',');
    cmd->add_option("--seed", config.master_seed, "master seed");
    cmd->add_option("--threads", config.threads,
                    "worker threads (0 = hardware)");
  };
  auto add_sampler_flags = [&](CLI::App* cmd) {
    cmd->add_option("--nms-threshold", config.nms.threshold,
                    "NMS suppression threshold, meters");
    cmd->add_option("--kmeans-max-iters", config.kmeans.max_iters,
                    "Lloyd iteration cap");
    cmd->add_option("--learning-rate", config.optimizer.learning_rate,
                    "optimizer learning rate");
    cmd->add_option("--steps", config.optimizer.steps, "optimizer steps");
    cmd->add_option("--loss-k", config.loss.k,
                    "k inside the optimized loss (0 = candidate count)");
    cmd->add_flag_callback(
        "--loss-fde", [&] { config.loss.kind = ts::LossKind::MinFde; },
        "optimize final-step displacement instead of average");
  };

  CLI::App* generate = app.add_subcommand("generate", "write a synthetic dataset");
  generate->add_option("--count", config.count, "number of scenarios");
  generate->add_option("--seed", config.master_seed, "master seed");
  generate->add_option("--output,-o", config.output, "output path (- = stdout)");
  generate->add_option("--horizon", config.world.horizon, "timesteps per trajectory");
  generate->add_option("--timestep", config.world.timestep, "seconds per step");
  generate->add_option("--gt-noise-sigma", config.world.gt_noise_sigma,
                       "ground-truth noise sigma, meters");
  generate->add_option("--proposals-per-model", config.ensemble.proposals_per_model,
                       "proposals each model emits");

  CLI::App* sample = app.add_subcommand("sample", "run one sampler over a dataset");
  sample->add_option("--input,-i", config.input, "scenario file")->required();
  sample->add_option("--output,-o", config.output, "candidate output (- = stdout)");
  sample->add_option("--sampler", sampler, "uniform|categorical|topk|kmeans|nms|nms_kmeans|ours");
  add_eval_flags(sample);
  add_sampler_flags(sample);

  CLI::App* compare = app.add_subcommand("compare", "compare samplers on a dataset");
  compare->add_option("--input,-i", config.input, "scenario file")->required();
  compare->add_option("--output,-o", config.output, "CSV output (- = stdout)");
  compare->add_option("--samplers", config.samplers, "comma-separated sampler names")
      ->delimiter(',');
  add_eval_flags(compare);
  add_sampler_flags(compare);

  CLI::App* sweep_proposals =
      app.add_subcommand("sweep-proposals", "metrics vs pooled proposal count");
  sweep_proposals->add_option("--counts", config.counts,
                              "pooled proposal counts (multiples of the model count)")
      ->delimiter(',');
  sweep_proposals->add_option("--scenarios", config.count, "scenarios per count");
  sweep_proposals->add_option("--output,-o", config.output, "CSV output (- = stdout)");
  sweep_proposals->add_option("--samplers", config.samplers, "samplers to sweep")
      ->delimiter(',');
  add_eval_flags(sweep_proposals);
  add_sampler_flags(sweep_proposals);

  CLI::App* sweep_nms =
      app.add_subcommand("sweep-nms", "NMS+KMeans metrics vs suppression threshold");
  sweep_nms->add_option("--input,-i", config.input, "scenario file")->required();
  sweep_nms->add_option("--thresholds", config.thresholds, "thresholds to sweep")
      ->delimiter(',');
  sweep_nms->add_option("--output,-o", config.output, "CSV output (- = stdout)");
  add_eval_flags(sweep_nms);

  CLI::App* verify = app.add_subcommand("verify", "oracle suite on small instances");
  verify->add_option("--input,-i", config.input, "fixture scenario file");
  verify->add_option("--instances", verify_instances, "instance count");
  verify->add_option("--seed", config.master_seed, "master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (generate->parsed()) return run_generate(config);
    if (sample->parsed()) return run_sample(config, sampler);
    if (compare->parsed()) return run_compare(config);
    if (sweep_proposals->parsed()) return run_sweep_proposals(config);
    if (sweep_nms->parsed()) return run_sweep_nms(config);
    if (verify->parsed()) return run_verify(config, verify_instances);
  } catch (const ts::ConfigError& e) {
    print_error(e, e.code(), 0, e.field());
    return 1;
  } catch (const ts::Error& e) {
    print_error(e, e.code(), e.line());
    return 2;
  } catch (const std::invalid_argument& e) {
    print_error(e, "usage");
    return 1;
  } catch (const std::exception& e) {
    print_error(e, "internal");
    return 2;
  }
  return 0;
}
