#pragma once

#include <string>
#include <utility>
#include <vector>

#include "trajsample/rng.hpp"
#include "trajsample/types.hpp"

namespace testutil {

using trajsample::ModelPrediction;
using trajsample::ProposalMixture;
using trajsample::Trajectory;
using trajsample::Vec2;

/// Straight path: point t is start + (t+1) * step.
inline Trajectory line(Vec2 start, Vec2 step, int horizon) {
  Trajectory out;
  out.reserve(static_cast<std::size_t>(horizon));
  Vec2 pos = start;
  for (int t = 0; t < horizon; ++t) {
    pos += step;
    out.push_back(pos);
  }
  return out;
}

inline Trajectory shifted(const Trajectory& base, Vec2 offset) {
  Trajectory out = base;
  for (Vec2& point : out) point += offset;
  return out;
}

inline ModelPrediction model(
    std::string id, std::vector<std::pair<double, Trajectory>> proposals) {
  ModelPrediction prediction;
  prediction.model_id = std::move(id);
  for (auto& [weight, trajectory] : proposals) {
    prediction.proposals.push_back({weight, std::move(trajectory)});
  }
  return prediction;
}

/// One-model mixture from (weight, trajectory) pairs.
inline ProposalMixture single_model(
    std::vector<std::pair<double, Trajectory>> proposals) {
  return trajsample::build_mixture({model("m0", std::move(proposals))});
}

/// Random well-formed mixture: `models` models with `proposals` proposals
/// each, random-walk trajectories of the given horizon, positive weights.
inline ProposalMixture random_mixture(trajsample::Rng& rng, std::size_t models,
                                      std::size_t proposals,
                                      std::size_t horizon) {
  std::vector<ModelPrediction> predictions;
  for (std::size_t m = 0; m < models; ++m) {
    ModelPrediction prediction;
    prediction.model_id = "m" + std::to_string(m);
    for (std::size_t n = 0; n < proposals; ++n) {
      Trajectory traj(horizon);
      Vec2 pos{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      for (std::size_t t = 0; t < horizon; ++t) {
        pos += Vec2{rng.uniform(-1.5, 2.5), rng.uniform(-1.5, 1.5)};
        traj[t] = pos;
      }
      prediction.proposals.push_back({rng.uniform(0.05, 1.0), std::move(traj)});
    }
    predictions.push_back(std::move(prediction));
  }
  return trajsample::build_mixture(std::move(predictions));
}

inline bool same_trajectory(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (!(a[t] == b[t])) return false;
  }
  return true;
}

/// True when `set` is a permutation of the mixture's proposals (pointwise
/// equality, each proposal matched at most once).
inline bool is_proposal_permutation(const ProposalMixture& mixture,
                                    const std::vector<Trajectory>& set) {
  if (set.size() != mixture.size()) return false;
  std::vector<bool> used(mixture.size(), false);
  for (const Trajectory& candidate : set) {
    bool matched = false;
    for (std::size_t p = 0; p < mixture.size(); ++p) {
      if (!used[p] && same_trajectory(candidate, mixture.trajectory(p))) {
        used[p] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

/// True when every member of `set` equals some proposal of the mixture.
inline bool all_from_pool(const ProposalMixture& mixture,
                          const std::vector<Trajectory>& set) {
  for (const Trajectory& candidate : set) {
    bool matched = false;
    for (std::size_t p = 0; p < mixture.size(); ++p) {
      if (same_trajectory(candidate, mixture.trajectory(p))) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace testutil
