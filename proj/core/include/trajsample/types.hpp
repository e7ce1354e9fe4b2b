#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trajsample/errors.hpp"

namespace trajsample {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) {
  a.x += b.x;
  a.y += b.y;
  return a;
}
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
inline double norm(Vec2 v) { return std::sqrt(v.x * v.x + v.y * v.y); }

/// A predicted or reference path: one 2-D position (meters, top-down frame)
/// per timestep. All trajectories within one scenario share the same length.
using Trajectory = std::vector<Vec2>;

/// One proposal of one model: a trajectory plus a nonnegative weight.
struct WeightedProposal {
  double weight = 0.0;
  Trajectory trajectory;
};

/// All proposals of a single model for one scenario.
struct ModelPrediction {
  std::string model_id;
  std::vector<WeightedProposal> proposals;
};

/// The pooled proposal distribution of an ensemble: M models whose per-model
/// weights lie on the simplex; proposal (m, n) carries effective weight
/// weight(m, n) / M, so the effective weights sum to one.
struct ProposalMixture {
  struct ProposalRef {
    std::size_t model = 0;
    std::size_t index = 0;
    double effective_weight = 0.0;
  };

  std::vector<ModelPrediction> models;  // weights normalized per model
  std::vector<ProposalRef> proposals;   // flattened, model-major order
  int horizon = 0;
  // Set when an input model's weights summed away from 1 by more than 1e-6
  // and were rescaled.
  bool renormalized = false;

  std::size_t size() const { return proposals.size(); }

  const Trajectory& trajectory(const ProposalRef& ref) const {
    return models[ref.model].proposals[ref.index].trajectory;
  }
  const Trajectory& trajectory(std::size_t flat_index) const {
    return trajectory(proposals[flat_index]);
  }
  double effective_weight(std::size_t flat_index) const {
    return proposals[flat_index].effective_weight;
  }
};

/// The set of trajectories a sampler outputs, most-preferred first.
using CandidateSet = std::vector<Trajectory>;

/// One prediction instance: a pooled mixture plus, for evaluation, the
/// trajectory the agent actually drove.
struct Scenario {
  std::string scenario_id;
  ProposalMixture mixture;
  std::optional<Trajectory> ground_truth;
};

/// Rescales the proposal weights of one model to sum to one, preserving
/// proportions. Throws AllZeroWeights when every weight is zero and
/// Malformed on negative or non-finite weights.
ModelPrediction normalize_model_weights(const ModelPrediction& prediction);

/// Pools model predictions into the ensemble mixture. Each model is
/// normalized onto the simplex; proposal (m, n) receives effective weight
/// weight / M. Throws EmptyEnsemble, InconsistentHorizon or Malformed.
ProposalMixture build_mixture(std::vector<ModelPrediction> models);

}  // namespace trajsample
