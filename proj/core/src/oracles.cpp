#include "trajsample/oracles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "trajsample/errors.hpp"

namespace trajsample {

namespace {

constexpr std::size_t kMaxOraclePool = 16;
constexpr double kWeiszfeldTol = 1e-9;
constexpr int kWeiszfeldMaxIters = 10000;
constexpr double kAnchorPerturb = 1e-9;

/// Weighted geometric median of 2-D points via Weiszfeld iteration.
Vec2 weiszfeld(const std::vector<Vec2>& points,
               const std::vector<double>& weights) {
  bool all_coincident = true;
  for (const Vec2& point : points) {
    if (norm(point - points.front()) >= kAnchorPerturb) {
      all_coincident = false;
      break;
    }
  }
  if (all_coincident) return points.front();

  double total = 0.0;
  Vec2 start{};
  for (std::size_t i = 0; i < points.size(); ++i) {
    start += weights[i] * points[i];
    total += weights[i];
  }
  start = (1.0 / total) * start;

  Vec2 current = start;
  for (int iter = 0; iter < kWeiszfeldMaxIters; ++iter) {
    double denom = 0.0;
    Vec2 numer{};
    bool at_anchor = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double dist = norm(current - points[i]);
      if (dist < kAnchorPerturb) {
        at_anchor = true;
        break;
      }
      const double inv = weights[i] / dist;
      numer += inv * points[i];
      denom += inv;
    }
    if (at_anchor) {
      // Nudge off the data point so the reweighting stays defined.
      current += Vec2{kAnchorPerturb, kAnchorPerturb};
      continue;
    }
    const Vec2 next = (1.0 / denom) * numer;
    const double moved = norm(next - current);
    current = next;
    if (moved < kWeiszfeldTol) break;
  }
  return current;
}

}  // namespace

SubsetOracleResult brute_force_subset_oracle(const ProposalMixture& mixture,
                                             int num_candidates,
                                             const LossSpec& loss) {
  const std::size_t pool = mixture.size();
  if (pool > kMaxOraclePool) {
    throw TooManyProposals("subset oracle supports at most " +
                           std::to_string(kMaxOraclePool) +
                           " proposals, got " + std::to_string(pool));
  }
  if (num_candidates < 1 ||
      static_cast<std::size_t>(num_candidates) > pool) {
    throw std::invalid_argument("subset size must lie in [1, pool size]");
  }
  const std::size_t S = static_cast<std::size_t>(num_candidates);
  LossSpec resolved = loss;
  if (resolved.k == 0) resolved.k = num_candidates;

  std::vector<std::size_t> pick(S);
  for (std::size_t i = 0; i < S; ++i) pick[i] = i;

  SubsetOracleResult best;
  best.risk = std::numeric_limits<double>::infinity();
  CandidateSet candidates(S);
  while (true) {
    for (std::size_t i = 0; i < S; ++i) candidates[i] = mixture.trajectory(pick[i]);
    const double value = risk(mixture, candidates, resolved);
    if (value < best.risk) {
      best.risk = value;
      best.indices = pick;
    }

    // Advance to the next combination in lexicographic order.
    std::size_t i = S;
    while (i > 0) {
      --i;
      if (pick[i] != i + pool - S) {
        ++pick[i];
        for (std::size_t j = i + 1; j < S; ++j) pick[j] = pick[j - 1] + 1;
        break;
      }
      if (i == 0) return best;
    }
  }
}

Trajectory geometric_median_oracle(const ProposalMixture& mixture) {
  const std::size_t horizon = static_cast<std::size_t>(mixture.horizon);
  std::vector<Vec2> points;
  std::vector<double> weights;
  for (std::size_t p = 0; p < mixture.size(); ++p) {
    if (mixture.effective_weight(p) > 0.0) {
      weights.push_back(mixture.effective_weight(p));
    }
  }

  Trajectory median(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    points.clear();
    for (std::size_t p = 0; p < mixture.size(); ++p) {
      if (mixture.effective_weight(p) > 0.0) {
        points.push_back(mixture.trajectory(p)[t]);
      }
    }
    median[t] = weiszfeld(points, weights);
  }
  return median;
}

std::vector<Trajectory> finite_difference_gradient(
    const ProposalMixture& mixture, const CandidateSet& candidates,
    const LossSpec& loss, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
  CandidateSet probe = candidates;
  std::vector<Trajectory> gradient(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    gradient[c].assign(candidates[c].size(), Vec2{});
    for (std::size_t t = 0; t < candidates[c].size(); ++t) {
      for (int axis = 0; axis < 2; ++axis) {
        double& coord = axis == 0 ? probe[c][t].x : probe[c][t].y;
        const double saved = coord;
        coord = saved + h;
        const double up = risk(mixture, probe, loss);
        coord = saved - h;
        const double down = risk(mixture, probe, loss);
        coord = saved;
        const double slope = (up - down) / (2.0 * h);
        if (axis == 0) {
          gradient[c][t].x = slope;
        } else {
          gradient[c][t].y = slope;
        }
      }
    }
  }
  return gradient;
}

}  // namespace trajsample
