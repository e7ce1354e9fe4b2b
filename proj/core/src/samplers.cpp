#include "trajsample/samplers.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "trajsample/metrics.hpp"
#include "trajsample/rng.hpp"

namespace trajsample {

namespace {

void check_pool(const ProposalMixture& mixture, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (static_cast<std::size_t>(k) > mixture.size()) {
    throw KExceedsProposals("k=" + std::to_string(k) + " exceeds pool of " +
                            std::to_string(mixture.size()) + " proposals");
  }
}

/// Squared Euclidean distance between trajectories flattened to 2T-vectors.
double sq_flat_dist(const Trajectory& a, const Trajectory& b) {
  double sum = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const Vec2 d = a[t] - b[t];
    sum += d.x * d.x + d.y * d.y;
  }
  return sum;
}

/// Flat proposal indices ordered by effective weight, descending; ties fall
/// back to flat (model-major) order.
std::vector<std::size_t> weight_order(const ProposalMixture& mixture) {
  std::vector<std::size_t> order(mixture.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mixture.effective_weight(a) > mixture.effective_weight(b);
  });
  return order;
}

std::vector<std::size_t> assign_points(const ProposalMixture& mixture,
                                       const std::vector<Trajectory>& centroids) {
  std::vector<std::size_t> assignment(mixture.size(), 0);
  for (std::size_t p = 0; p < mixture.size(); ++p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      const double d = sq_flat_dist(mixture.trajectory(p), centroids[c]);
      if (d < best) {
        best = d;
        assignment[p] = c;
      }
    }
  }
  return assignment;
}

/// Lloyd iterations on the unweighted proposal points. Empty clusters keep
/// their previous centroid.
std::vector<Trajectory> lloyd_refine(const ProposalMixture& mixture,
                                     std::vector<Trajectory> centroids,
                                     int max_iters) {
  const std::size_t horizon = static_cast<std::size_t>(mixture.horizon);
  std::vector<std::size_t> assignment;
  for (int iter = 0; iter < max_iters; ++iter) {
    std::vector<std::size_t> next = assign_points(mixture, centroids);
    if (iter > 0 && next == assignment) break;
    assignment = std::move(next);

    std::vector<Trajectory> sums(centroids.size(), Trajectory(horizon, Vec2{}));
    std::vector<std::size_t> counts(centroids.size(), 0);
    for (std::size_t p = 0; p < mixture.size(); ++p) {
      const std::size_t c = assignment[p];
      const Trajectory& traj = mixture.trajectory(p);
      for (std::size_t t = 0; t < horizon; ++t) sums[c][t] += traj[t];
      counts[c] += 1;
    }
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      if (counts[c] == 0) continue;
      const double inv = 1.0 / static_cast<double>(counts[c]);
      for (std::size_t t = 0; t < horizon; ++t) centroids[c][t] = inv * sums[c][t];
    }
  }
  return centroids;
}

/// k-means++ seeding over the proposal points. When every remaining squared
/// distance is zero (duplicate-heavy pools) the next seed is drawn uniformly
/// from the unchosen points, keeping the seeds distinct.
std::vector<Trajectory> plus_plus_seeds(const ProposalMixture& mixture,
                                        std::size_t k, Rng& rng) {
  std::vector<Trajectory> centroids;
  centroids.reserve(k);
  std::vector<bool> chosen(mixture.size(), false);

  std::size_t first = rng.uniform_index(mixture.size());
  centroids.push_back(mixture.trajectory(first));
  chosen[first] = true;

  std::vector<double> d2(mixture.size());
  for (std::size_t p = 0; p < mixture.size(); ++p) {
    d2[p] = sq_flat_dist(mixture.trajectory(p), centroids.front());
  }

  while (centroids.size() < k) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    std::size_t pick;
    if (total > 0.0) {
      pick = rng.categorical(d2);
    } else {
      std::vector<std::size_t> open;
      for (std::size_t p = 0; p < mixture.size(); ++p) {
        if (!chosen[p]) open.push_back(p);
      }
      pick = open[rng.uniform_index(open.size())];
    }
    chosen[pick] = true;
    centroids.push_back(mixture.trajectory(pick));
    for (std::size_t p = 0; p < mixture.size(); ++p) {
      d2[p] = std::min(d2[p], sq_flat_dist(mixture.trajectory(p), centroids.back()));
    }
  }
  return centroids;
}

/// Maps each centroid to a distinct proposal, greedily in ascending
/// centroid-to-proposal distance, then orders the representatives by
/// descending cluster weight mass.
CandidateSet distinct_representatives(const ProposalMixture& mixture,
                                      const std::vector<Trajectory>& centroids) {
  struct Pair {
    double d2;
    std::size_t centroid;
    std::size_t proposal;
  };
  std::vector<Pair> pairs;
  pairs.reserve(centroids.size() * mixture.size());
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    for (std::size_t p = 0; p < mixture.size(); ++p) {
      pairs.push_back({sq_flat_dist(centroids[c], mixture.trajectory(p)), c, p});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return std::tie(a.d2, a.centroid, a.proposal) <
           std::tie(b.d2, b.centroid, b.proposal);
  });

  std::vector<std::size_t> representative(centroids.size(), mixture.size());
  std::vector<bool> proposal_used(mixture.size(), false);
  std::size_t assigned = 0;
  for (const Pair& pair : pairs) {
    if (assigned == centroids.size()) break;
    if (representative[pair.centroid] != mixture.size()) continue;
    if (proposal_used[pair.proposal]) continue;
    representative[pair.centroid] = pair.proposal;
    proposal_used[pair.proposal] = true;
    ++assigned;
  }

  const std::vector<std::size_t> assignment = assign_points(mixture, centroids);
  std::vector<double> mass(centroids.size(), 0.0);
  for (std::size_t p = 0; p < mixture.size(); ++p) {
    mass[assignment[p]] += mixture.effective_weight(p);
  }
  std::vector<std::size_t> order(centroids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mass[a] > mass[b];
  });

  CandidateSet out;
  out.reserve(centroids.size());
  for (std::size_t c : order) out.push_back(mixture.trajectory(representative[c]));
  return out;
}

}  // namespace

CandidateSet sample_uniform(const ProposalMixture& mixture, int k,
                            std::uint64_t seed) {
  check_pool(mixture, k);
  Rng rng(seed);
  CandidateSet out;
  out.reserve(static_cast<std::size_t>(k));
  for (std::size_t p : rng.sample_indices(mixture.size(), static_cast<std::size_t>(k))) {
    out.push_back(mixture.trajectory(p));
  }
  return out;
}

CandidateSet sample_categorical(const ProposalMixture& mixture, int k,
                                std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  std::vector<double> weights(mixture.size());
  std::size_t support = 0;
  for (std::size_t p = 0; p < mixture.size(); ++p) {
    weights[p] = mixture.effective_weight(p);
    if (weights[p] > 0.0) ++support;
  }
  if (static_cast<std::size_t>(k) > support) {
    throw KExceedsPositiveSupport(
        "k=" + std::to_string(k) + " exceeds the " + std::to_string(support) +
        " proposals with positive weight");
  }
  Rng rng(seed);
  CandidateSet out;
  out.reserve(static_cast<std::size_t>(k));
  for (std::size_t p :
       rng.sample_weighted_indices(weights, static_cast<std::size_t>(k))) {
    out.push_back(mixture.trajectory(p));
  }
  return out;
}

CandidateSet sample_topk(const ProposalMixture& mixture, int k) {
  check_pool(mixture, k);
  const std::vector<std::size_t> order = weight_order(mixture);
  CandidateSet out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    out.push_back(mixture.trajectory(order[static_cast<std::size_t>(i)]));
  }
  return out;
}

CandidateSet kmeans_select(const ProposalMixture& mixture,
                           const KMeansConfig& config) {
  check_pool(mixture, config.clusters);
  const std::size_t k = static_cast<std::size_t>(config.clusters);
  Rng rng(config.seed);
  std::vector<Trajectory> centroids = plus_plus_seeds(mixture, k, rng);
  centroids = lloyd_refine(mixture, std::move(centroids), config.max_iters);
  return distinct_representatives(mixture, centroids);
}

CandidateSet nms_select(const ProposalMixture& mixture, int k,
                        const NmsConfig& config) {
  check_pool(mixture, k);
  if (!(config.threshold > 0.0)) {
    throw std::invalid_argument("NMS threshold must be positive");
  }

  enum class State { Alive, Suppressed, Selected };
  std::vector<State> state(mixture.size(), State::Alive);
  const std::vector<std::size_t> by_weight = weight_order(mixture);

  std::vector<std::size_t> selected;
  selected.reserve(static_cast<std::size_t>(k));
  while (selected.size() < static_cast<std::size_t>(k)) {
    std::size_t pick = mixture.size();
    for (std::size_t p : by_weight) {
      if (state[p] == State::Alive) {
        pick = p;
        break;
      }
    }
    if (pick == mixture.size()) break;  // pool exhausted
    state[pick] = State::Selected;
    selected.push_back(pick);
    for (std::size_t p : by_weight) {
      if (state[p] != State::Alive) continue;
      if (ade(mixture.trajectory(pick), mixture.trajectory(p)) <
          config.threshold) {
        state[p] = State::Suppressed;
      }
    }
  }

  // Re-admit suppressed proposals by descending original weight until k.
  for (std::size_t p : by_weight) {
    if (selected.size() == static_cast<std::size_t>(k)) break;
    if (state[p] == State::Suppressed) {
      state[p] = State::Selected;
      selected.push_back(p);
    }
  }

  CandidateSet out;
  out.reserve(selected.size());
  for (std::size_t p : selected) out.push_back(mixture.trajectory(p));
  return out;
}

CandidateSet nms_kmeans_select(const ProposalMixture& mixture, int k,
                               const NmsConfig& nms_config,
                               const KMeansConfig& kmeans_config) {
  std::vector<Trajectory> centroids = nms_select(mixture, k, nms_config);
  centroids = lloyd_refine(mixture, std::move(centroids), kmeans_config.max_iters);
  return distinct_representatives(mixture, centroids);
}

}  // namespace trajsample
