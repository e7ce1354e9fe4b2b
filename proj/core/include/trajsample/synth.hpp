#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "trajsample/types.hpp"

namespace trajsample {

/// Maneuver vocabulary for the synthetic world. Each maneuver maps to a
/// deterministic unicycle rollout, so distinct maneuvers diverge over the
/// horizon and the futures are genuinely multi-modal.
enum class Maneuver {
  Straight,
  LeftTurn,
  RightTurn,
  LaneChangeLeft,
  LaneChangeRight,
  Brake,
};

inline constexpr std::size_t kManeuverCount = 6;

struct WorldConfig {
  int horizon = 12;
  double timestep = 0.5;  // seconds
  std::array<double, kManeuverCount> maneuver_prior{0.35, 0.15, 0.15,
                                                    0.12, 0.12, 0.11};
  double speed_min = 3.0;   // m/s
  double speed_max = 15.0;  // m/s
  double gt_noise_sigma = 0.15;
};

/// One emulated predictor. Coverage is the chance the model identifies the
/// true maneuver; bias shifts every proposal point; temperature calibrates
/// the softmax over proposal scores (low temperature = overconfident).
struct ModelEmulation {
  std::string model_id;
  double coverage = 1.0;
  Vec2 bias{};
  double noise_sigma = 0.0;
  double temperature = 1.0;
};

struct EnsembleEmulation {
  std::vector<ModelEmulation> models;
  int proposals_per_model = 10;
};

/// Three heterogeneous models with distinct bias, coverage, noise and
/// calibration, so the pooled proposal set behaves like a diverse ensemble.
EnsembleEmulation default_ensemble(int proposals_per_model = 10);

void validate(const WorldConfig& world);
void validate(const EnsembleEmulation& ensemble);

/// Deterministic unicycle rollout for one maneuver at a constant commanded
/// speed. Returns the horizon positions after each step, starting from the
/// origin heading +x; the origin itself is not included.
Trajectory maneuver_rollout(Maneuver maneuver, double speed,
                            const WorldConfig& world);

/// Samples one scenario: a true maneuver and noisy ground truth, plus N
/// weighted proposals per emulated model. Deterministic given the seed; the
/// ground truth stream is independent of the ensemble configuration, so the
/// same seed yields the same ground truth regardless of proposal count.
Scenario generate_scenario(const WorldConfig& world,
                           const EnsembleEmulation& ensemble,
                           std::uint64_t seed,
                           const std::string& scenario_id = "");

/// Generates `count` scenarios; scenario i is seeded by hashing
/// (master_seed, i), so content is independent of generation order.
std::vector<Scenario> generate_dataset(const WorldConfig& world,
                                       const EnsembleEmulation& ensemble,
                                       int count, std::uint64_t master_seed);

}  // namespace trajsample
