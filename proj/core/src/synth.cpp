#include "trajsample/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "trajsample/errors.hpp"
#include "trajsample/rng.hpp"

namespace trajsample {

namespace {

constexpr std::uint64_t kGroundTruthStream = 0xA5CE17;
constexpr std::uint64_t kModelStreamBase = 0xB0B5;
constexpr double kLaneOffset = 3.5;      // meters, one lane width
constexpr double kBeliefBonus = 2.0;     // logit boost for the believed maneuver
constexpr double kLogitJitterSigma = 0.3;
constexpr double kAlternateSpread = 0.5;  // alternate modes are canonical guesses

/// Yaw-rate command for a maneuver at step t of T. Lane changes steer one
/// way for the first half of the horizon and back for the second, which
/// yields roughly kLaneOffset of lateral displacement at the end.
double yaw_rate(Maneuver maneuver, double speed, double duration, int step,
                int horizon) {
  switch (maneuver) {
    case Maneuver::Straight:
    case Maneuver::Brake:
      return 0.0;
    case Maneuver::LeftTurn:
      return (std::acos(-1.0) / 2.0) / duration;
    case Maneuver::RightTurn:
      return -(std::acos(-1.0) / 2.0) / duration;
    case Maneuver::LaneChangeLeft:
    case Maneuver::LaneChangeRight: {
      const double v = std::max(speed, 0.5);
      double omega = 4.0 * kLaneOffset / (v * duration * duration);
      if (maneuver == Maneuver::LaneChangeRight) omega = -omega;
      return 2 * step < horizon ? omega : -omega;
    }
  }
  return 0.0;
}

std::string default_id(std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "scn-%016llx",
                static_cast<unsigned long long>(seed));
  return buf;
}

}  // namespace

void validate(const WorldConfig& world) {
  if (world.horizon < 2) throw ConfigError("horizon", "must be at least 2");
  if (!(world.timestep > 0.0)) throw ConfigError("timestep", "must be positive");
  double prior_sum = 0.0;
  for (double p : world.maneuver_prior) {
    if (p < 0.0) throw ConfigError("maneuver_prior", "entries must be non-negative");
    prior_sum += p;
  }
  if (std::abs(prior_sum - 1.0) > 1e-9) {
    throw ConfigError("maneuver_prior", "must sum to 1");
  }
  if (!(world.speed_min > 0.0) || world.speed_max < world.speed_min) {
    throw ConfigError("speed_range", "need 0 < speed_min <= speed_max");
  }
  if (world.gt_noise_sigma < 0.0) {
    throw ConfigError("gt_noise_sigma", "must be non-negative");
  }
}

void validate(const EnsembleEmulation& ensemble) {
  if (ensemble.models.empty()) throw ConfigError("models", "need at least one model");
  if (ensemble.proposals_per_model < 1) {
    throw ConfigError("proposals_per_model", "must be at least 1");
  }
  for (const ModelEmulation& model : ensemble.models) {
    if (model.model_id.empty()) throw ConfigError("model_id", "must be non-empty");
    if (model.coverage < 0.0 || model.coverage > 1.0) {
      throw ConfigError("coverage", "must lie in [0, 1]");
    }
    if (model.noise_sigma < 0.0) {
      throw ConfigError("noise_sigma", "must be non-negative");
    }
    if (!(model.temperature > 0.0)) {
      throw ConfigError("temperature", "must be positive");
    }
  }
}

EnsembleEmulation default_ensemble(int proposals_per_model) {
  EnsembleEmulation ensemble;
  ensemble.proposals_per_model = proposals_per_model;
  ensemble.models = {
      {"alpha", 0.85, Vec2{0.12, -0.08}, 0.45, 1.0},
      {"bravo", 0.60, Vec2{-0.20, 0.15}, 0.40, 0.50},
      {"charlie", 0.995, Vec2{0.08, 0.20}, 0.55, 2.2},
  };
  return ensemble;
}

Trajectory maneuver_rollout(Maneuver maneuver, double speed,
                            const WorldConfig& world) {
  const int T = world.horizon;
  const double dt = world.timestep;
  const double duration = T * dt;
  const double decel =
      maneuver == Maneuver::Brake ? speed / duration : 0.0;

  Trajectory out;
  out.reserve(static_cast<std::size_t>(T));
  Vec2 pos{};
  double heading = 0.0;
  double v = speed;
  for (int t = 0; t < T; ++t) {
    heading += yaw_rate(maneuver, speed, duration, t, T) * dt;
    v = std::max(v - decel * dt, 0.0);
    pos += (v * dt) * Vec2{std::cos(heading), std::sin(heading)};
    out.push_back(pos);
  }
  return out;
}

Scenario generate_scenario(const WorldConfig& world,
                           const EnsembleEmulation& ensemble,
                           std::uint64_t seed,
                           const std::string& scenario_id) {
  validate(world);
  validate(ensemble);

  Scenario scenario;
  scenario.scenario_id = scenario_id.empty() ? default_id(seed) : scenario_id;

  // Ground truth uses its own stream so it is unaffected by how many models
  // or proposals the ensemble emits.
  Rng gt_rng(mix_seed(seed, kGroundTruthStream));
  std::vector<double> prior(world.maneuver_prior.begin(),
                            world.maneuver_prior.end());
  const std::size_t true_maneuver = gt_rng.categorical(prior);
  const double speed = gt_rng.uniform(world.speed_min, world.speed_max);

  const Trajectory mean =
      maneuver_rollout(static_cast<Maneuver>(true_maneuver), speed, world);
  Trajectory ground_truth = mean;
  const double sigma = world.gt_noise_sigma;
  for (Vec2& point : ground_truth) {
    Vec2 noise = sigma * Vec2{gt_rng.normal(), gt_rng.normal()};
    // Clamp the perturbation so kinematic continuity holds deterministically.
    const double len = norm(noise);
    if (len > 2.0 * sigma) noise = (2.0 * sigma / len) * noise;
    point += noise;
  }
  scenario.ground_truth = std::move(ground_truth);

  const int N = ensemble.proposals_per_model;
  std::vector<ModelPrediction> predictions;
  predictions.reserve(ensemble.models.size());
  for (std::size_t m = 0; m < ensemble.models.size(); ++m) {
    const ModelEmulation& model = ensemble.models[m];
    Rng rng(mix_seed(mix_seed(seed, kModelStreamBase), m));

    // The model's belief about the maneuver: correct with probability
    // coverage, otherwise a uniformly random wrong maneuver.
    std::size_t believed = true_maneuver;
    if (rng.uniform01() >= model.coverage) {
      const std::size_t shift = 1 + rng.uniform_index(kManeuverCount - 1);
      believed = (true_maneuver + shift) % kManeuverCount;
    }

    // Which maneuver each slot proposes: the model keeps a ranked shortlist
    // the way a multi-modal output head does. Slot 0 is the believed mode,
    // the next slots walk the remaining maneuvers once in prior order, and
    // every surplus slot repeats the believed mode, so a larger proposal
    // budget buys near-duplicates of the top pick rather than new modes.
    std::vector<std::size_t> alternates;
    alternates.reserve(kManeuverCount - 1);
    for (std::size_t mode = 0; mode < kManeuverCount; ++mode) {
      if (mode != believed) alternates.push_back(mode);
    }
    std::stable_sort(alternates.begin(), alternates.end(),
                     [&](std::size_t lhs, std::size_t rhs) {
                       return prior[lhs] > prior[rhs];
                     });

    ModelPrediction prediction;
    prediction.model_id = model.model_id;
    prediction.proposals.reserve(static_cast<std::size_t>(N));
    std::vector<double> logits(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) {
      const std::size_t slot = static_cast<std::size_t>(n);
      const std::size_t mode = (n == 0 || slot > alternates.size())
                                   ? believed
                                   : alternates[slot - 1];
      Trajectory traj =
          maneuver_rollout(static_cast<Maneuver>(mode), speed, world);
      // Believed-mode slots are dense samples with the model's full spread;
      // alternate modes come out as single canonical guesses, so they sit
      // closer to their maneuver template.
      const double sigma =
          model.noise_sigma * (mode == believed ? 1.0 : kAlternateSpread);
      for (Vec2& point : traj) {
        point += model.bias;
        point += sigma * Vec2{rng.normal(), rng.normal()};
      }
      double logit = std::log(std::max(prior[mode], 1e-12)) +
                     (mode == believed ? kBeliefBonus : 0.0) +
                     kLogitJitterSigma * rng.normal();
      logits[static_cast<std::size_t>(n)] = logit;
      prediction.proposals.push_back({0.0, std::move(traj)});
    }

    const double max_logit = *std::max_element(logits.begin(), logits.end());
    double total = 0.0;
    for (int n = 0; n < N; ++n) {
      const double w =
          std::exp((logits[static_cast<std::size_t>(n)] - max_logit) /
                   model.temperature);
      prediction.proposals[static_cast<std::size_t>(n)].weight = w;
      total += w;
    }
    for (WeightedProposal& proposal : prediction.proposals) {
      proposal.weight /= total;
    }
    predictions.push_back(std::move(prediction));
  }

  scenario.mixture = build_mixture(std::move(predictions));
  return scenario;
}

std::vector<Scenario> generate_dataset(const WorldConfig& world,
                                       const EnsembleEmulation& ensemble,
                                       int count, std::uint64_t master_seed) {
  if (count < 1) throw ConfigError("count", "must be at least 1");
  std::vector<Scenario> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "scn%06d", i);
    out.push_back(generate_scenario(
        world, ensemble, mix_seed(master_seed, static_cast<std::uint64_t>(i)),
        id));
  }
  return out;
}

}  // namespace trajsample
