#include "trajsample/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "trajsample/rng.hpp"

namespace trajsample {

namespace {

constexpr double kCoincidentNorm = 1e-12;
constexpr int kEarlyStopWindow = 32;
constexpr double kEarlyStopRelTol = 1e-7;

void check_inputs(const ProposalMixture& mixture,
                  const CandidateSet& candidates, const LossSpec& loss) {
  if (loss.k < 1) throw std::invalid_argument("loss k must be positive");
  if (static_cast<std::size_t>(loss.k) > candidates.size()) {
    throw KExceedsSetSize("loss k=" + std::to_string(loss.k) +
                          " exceeds candidate set size " +
                          std::to_string(candidates.size()));
  }
  for (const Trajectory& c : candidates) {
    if (static_cast<int>(c.size()) != mixture.horizon) {
      throw HorizonMismatch("candidate spans " + std::to_string(c.size()) +
                            " timesteps, mixture horizon is " +
                            std::to_string(mixture.horizon));
    }
  }
}

double pair_distance(const Trajectory& proposal, const Trajectory& candidate,
                     LossKind kind) {
  if (kind == LossKind::MinFde) return norm(proposal.back() - candidate.back());
  double sum = 0.0;
  for (std::size_t t = 0; t < proposal.size(); ++t) {
    sum += norm(proposal[t] - candidate[t]);
  }
  return sum / static_cast<double>(proposal.size());
}

Trajectory weighted_centroid(const ProposalMixture& mixture) {
  Trajectory centroid(static_cast<std::size_t>(mixture.horizon));
  for (std::size_t p = 0; p < mixture.size(); ++p) {
    const double w = mixture.effective_weight(p);
    const Trajectory& traj = mixture.trajectory(p);
    for (std::size_t t = 0; t < traj.size(); ++t) centroid[t] += w * traj[t];
  }
  return centroid;
}

/// Orders candidates most-preferred first by greedy forward selection: each
/// position takes the unplaced candidate whose addition lowers the prefix
/// risk the most (ties toward the lower index). Every k-prefix of the result
/// then approximates the best k-subset, which is what the k-prefix metric
/// convention scores.
CandidateSet rank_by_contribution(CandidateSet candidates,
                                  const ProposalMixture& mixture,
                                  LossKind kind) {
  const std::size_t count = candidates.size();
  if (count < 2) return candidates;

  std::vector<std::vector<double>> dist(mixture.size(),
                                        std::vector<double>(count));
  for (std::size_t p = 0; p < mixture.size(); ++p) {
    for (std::size_t s = 0; s < count; ++s) {
      dist[p][s] = pair_distance(mixture.trajectory(p), candidates[s], kind);
    }
  }

  std::vector<bool> placed(count, false);
  std::vector<double> best_so_far(mixture.size(),
                                  std::numeric_limits<double>::infinity());
  std::vector<std::size_t> order;
  order.reserve(count);
  for (std::size_t round = 0; round < count; ++round) {
    double lowest = std::numeric_limits<double>::infinity();
    std::size_t pick = count;
    for (std::size_t s = 0; s < count; ++s) {
      if (placed[s]) continue;
      double prefix_risk = 0.0;
      for (std::size_t p = 0; p < mixture.size(); ++p) {
        prefix_risk += mixture.effective_weight(p) *
                       std::min(best_so_far[p], dist[p][s]);
      }
      if (prefix_risk < lowest) {
        lowest = prefix_risk;
        pick = s;
      }
    }
    placed[pick] = true;
    order.push_back(pick);
    for (std::size_t p = 0; p < mixture.size(); ++p) {
      best_so_far[p] = std::min(best_so_far[p], dist[p][pick]);
    }
  }

  CandidateSet ranked;
  ranked.reserve(count);
  for (std::size_t s : order) ranked.push_back(std::move(candidates[s]));
  return ranked;
}

}  // namespace

double risk(const ProposalMixture& mixture, const CandidateSet& candidates,
            const LossSpec& loss) {
  check_inputs(mixture, candidates, loss);
  const std::size_t prefix = static_cast<std::size_t>(loss.k);
  double total = 0.0;
  for (std::size_t p = 0; p < mixture.size(); ++p) {
    const Trajectory& proposal = mixture.trajectory(p);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < prefix; ++s) {
      best = std::min(best, pair_distance(proposal, candidates[s], loss.kind));
    }
    total += mixture.effective_weight(p) * best;
  }
  return total;
}

std::vector<Trajectory> risk_subgradient(const ProposalMixture& mixture,
                                         const CandidateSet& candidates,
                                         const LossSpec& loss) {
  check_inputs(mixture, candidates, loss);
  const std::size_t prefix = static_cast<std::size_t>(loss.k);
  const std::size_t horizon = static_cast<std::size_t>(mixture.horizon);

  std::vector<Trajectory> gradient(candidates.size(),
                                   Trajectory(horizon, Vec2{}));
  for (std::size_t p = 0; p < mixture.size(); ++p) {
    const Trajectory& proposal = mixture.trajectory(p);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (std::size_t s = 0; s < prefix; ++s) {
      const double d = pair_distance(proposal, candidates[s], loss.kind);
      if (d < best) {
        best = d;
        best_index = s;
      }
    }
    const double weight = mixture.effective_weight(p);
    const Trajectory& winner = candidates[best_index];
    if (loss.kind == LossKind::MinFde) {
      const Vec2 diff = winner.back() - proposal.back();
      const double n = norm(diff);
      if (n >= kCoincidentNorm) {
        gradient[best_index].back() += (weight / n) * diff;
      }
    } else {
      const double scale = weight / static_cast<double>(horizon);
      for (std::size_t t = 0; t < horizon; ++t) {
        const Vec2 diff = winner[t] - proposal[t];
        const double n = norm(diff);
        if (n >= kCoincidentNorm) {
          gradient[best_index][t] += (scale / n) * diff;
        }
      }
    }
  }
  return gradient;
}

void adam_update(AdamState& state, CandidateSet& candidates,
                 const std::vector<Trajectory>& gradient,
                 const OptimizerConfig& config) {
  if (gradient.size() != candidates.size()) {
    throw std::invalid_argument("gradient shape does not match candidates");
  }
  std::size_t size = 0;
  for (std::size_t s = 0; s < candidates.size(); ++s) {
    if (gradient[s].size() != candidates[s].size()) {
      throw std::invalid_argument("gradient shape does not match candidates");
    }
    size += 2 * candidates[s].size();
  }
  if (state.first_moment.size() != size) {
    throw std::invalid_argument("optimizer state size does not match candidates");
  }

  state.step += 1;
  const double bias1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));

  std::size_t i = 0;
  auto update_coord = [&](double& x, double g) {
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = config.beta1 * m + (1.0 - config.beta1) * g;
    v = config.beta2 * v + (1.0 - config.beta2) * g * g;
    const double m_hat = m / bias1;
    const double v_hat = v / bias2;
    x -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.epsilon);
    ++i;
  };
  for (std::size_t s = 0; s < candidates.size(); ++s) {
    for (std::size_t t = 0; t < candidates[s].size(); ++t) {
      update_coord(candidates[s][t].x, gradient[s][t].x);
      update_coord(candidates[s][t].y, gradient[s][t].y);
    }
  }
}

CandidateSet random_init(const ProposalMixture& mixture, int num_candidates,
                         const OptimizerConfig& config) {
  if (num_candidates < 1) {
    throw std::invalid_argument("candidate count must be positive");
  }
  const std::size_t count = static_cast<std::size_t>(num_candidates);
  Rng rng(config.seed);

  CandidateSet candidates;
  candidates.reserve(count);
  switch (config.init) {
    case InitStrategy::CategoricalDraw: {
      std::vector<double> weights(mixture.size());
      for (std::size_t p = 0; p < mixture.size(); ++p) {
        weights[p] = mixture.effective_weight(p);
      }
      if (count <= mixture.size()) {
        for (std::size_t p : rng.sample_weighted_indices(weights, count)) {
          candidates.push_back(mixture.trajectory(p));
        }
      } else {
        const double total =
            std::accumulate(weights.begin(), weights.end(), 0.0);
        for (std::size_t s = 0; s < count; ++s) {
          const std::size_t p = total > 0.0 ? rng.categorical(weights)
                                            : rng.uniform_index(weights.size());
          candidates.push_back(mixture.trajectory(p));
        }
      }
      break;
    }
    case InitStrategy::UniformDraw: {
      if (count <= mixture.size()) {
        for (std::size_t p : rng.sample_indices(mixture.size(), count)) {
          candidates.push_back(mixture.trajectory(p));
        }
      } else {
        for (std::size_t s = 0; s < count; ++s) {
          candidates.push_back(mixture.trajectory(rng.uniform_index(mixture.size())));
        }
      }
      break;
    }
    case InitStrategy::GaussianNoise: {
      const Trajectory centroid = weighted_centroid(mixture);
      candidates.assign(count, centroid);
      break;
    }
  }

  if (config.jitter_sigma != 0.0) {
    for (Trajectory& candidate : candidates) {
      for (Vec2& point : candidate) {
        point.x += config.jitter_sigma * rng.normal();
        point.y += config.jitter_sigma * rng.normal();
      }
    }
  }
  return candidates;
}

std::pair<CandidateSet, OptimizationTrace> optimize(
    const ProposalMixture& mixture, int num_candidates, const LossSpec& loss,
    const OptimizerConfig& config) {
  LossSpec resolved = loss;
  if (resolved.k == 0) resolved.k = num_candidates;

  CandidateSet candidates = random_init(mixture, num_candidates, config);
  check_inputs(mixture, candidates, resolved);

  OptimizationTrace trace;
  trace.risk_per_step.reserve(static_cast<std::size_t>(config.steps) + 1);
  trace.risk_per_step.push_back(risk(mixture, candidates, resolved));

  CandidateSet best = candidates;
  double best_risk = trace.risk_per_step.front();
  int best_step = 0;

  AdamState state(2 * static_cast<std::size_t>(num_candidates) *
                  static_cast<std::size_t>(mixture.horizon));
  OptimizerConfig step_config = config;
  std::vector<double> best_history;
  best_history.reserve(static_cast<std::size_t>(config.steps) + 1);
  best_history.push_back(best_risk);
  for (int step = 1; step <= config.steps; ++step) {
    const std::vector<Trajectory> gradient =
        risk_subgradient(mixture, candidates, resolved);
    adam_update(state, candidates, gradient, step_config);
    step_config.learning_rate *= config.lr_decay;
    const double current = risk(mixture, candidates, resolved);
    trace.risk_per_step.push_back(current);
    if (current < best_risk) {
      best_risk = current;
      best = candidates;
      best_step = step;
    }
    best_history.push_back(best_risk);
    if (config.early_stop && step >= kEarlyStopWindow) {
      const double before =
          best_history[static_cast<std::size_t>(step - kEarlyStopWindow)];
      if (before - best_risk <
          kEarlyStopRelTol * std::max(before, 1e-300)) {
        break;
      }
    }
  }

  CandidateSet result = config.keep_best_iterate ? std::move(best)
                                                 : std::move(candidates);
  result = rank_by_contribution(std::move(result), mixture, resolved.kind);
  trace.final_risk = risk(mixture, result, resolved);
  trace.best_step = best_step;
  return {std::move(result), trace};
}

}  // namespace trajsample
