#include "trajsample/types.hpp"

#include <cmath>
#include <utility>

namespace trajsample {

namespace {

constexpr double kSimplexSlack = 1e-6;

double checked_weight_sum(const ModelPrediction& prediction) {
  double sum = 0.0;
  for (const WeightedProposal& p : prediction.proposals) {
    if (!std::isfinite(p.weight) || p.weight < 0.0) {
      throw Malformed("model '" + prediction.model_id +
                      "' has a negative or non-finite proposal weight");
    }
    sum += p.weight;
  }
  return sum;
}

}  // namespace

ModelPrediction normalize_model_weights(const ModelPrediction& prediction) {
  const double sum = checked_weight_sum(prediction);
  if (sum <= 0.0) {
    throw AllZeroWeights("model '" + prediction.model_id +
                         "' has only zero-weight proposals");
  }
  ModelPrediction normalized = prediction;
  for (WeightedProposal& p : normalized.proposals) p.weight /= sum;
  return normalized;
}

ProposalMixture build_mixture(std::vector<ModelPrediction> models) {
  if (models.empty()) {
    throw EmptyEnsemble("mixture requires at least one model");
  }

  ProposalMixture mixture;
  mixture.models.reserve(models.size());

  int horizon = -1;
  for (ModelPrediction& model : models) {
    if (model.proposals.empty()) {
      throw EmptyEnsemble("model '" + model.model_id + "' has no proposals");
    }
    const double sum = checked_weight_sum(model);
    if (sum <= 0.0) {
      throw AllZeroWeights("model '" + model.model_id +
                           "' has only zero-weight proposals");
    }
    if (std::abs(sum - 1.0) > kSimplexSlack) mixture.renormalized = true;
    for (WeightedProposal& p : model.proposals) {
      p.weight /= sum;
      if (p.trajectory.empty()) {
        throw InconsistentHorizon("model '" + model.model_id +
                                  "' has an empty trajectory");
      }
      for (Vec2 point : p.trajectory) {
        if (!std::isfinite(point.x) || !std::isfinite(point.y)) {
          throw Malformed("model '" + model.model_id +
                          "' has a non-finite trajectory coordinate");
        }
      }
      const int steps = static_cast<int>(p.trajectory.size());
      if (horizon < 0) horizon = steps;
      if (steps != horizon) {
        throw InconsistentHorizon("trajectory has " + std::to_string(steps) +
                                  " timesteps, expected " +
                                  std::to_string(horizon));
      }
    }
    mixture.models.push_back(std::move(model));
  }

  mixture.horizon = horizon;
  const double model_count = static_cast<double>(mixture.models.size());
  for (std::size_t m = 0; m < mixture.models.size(); ++m) {
    const auto& proposals = mixture.models[m].proposals;
    for (std::size_t n = 0; n < proposals.size(); ++n) {
      mixture.proposals.push_back(
          {m, n, proposals[n].weight / model_count});
    }
  }
  return mixture;
}

}  // namespace trajsample
