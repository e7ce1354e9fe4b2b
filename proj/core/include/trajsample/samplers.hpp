#pragma once

#include <cstdint>
#include <vector>

#include "trajsample/types.hpp"

namespace trajsample {

enum class NmsMetric { Ade };

/// Suppression rule for non-maximum suppression over proposals.
struct NmsConfig {
  double threshold = 1.0;  // meters; proposals closer than this are suppressed
  NmsMetric metric = NmsMetric::Ade;
};

struct KMeansConfig {
  int clusters = 1;
  int max_iters = 100;
  std::uint64_t seed = 0;
};

/// k distinct proposals drawn uniformly without replacement.
CandidateSet sample_uniform(const ProposalMixture& mixture, int k,
                            std::uint64_t seed);

/// k distinct proposals by successive effective-weight draws without
/// replacement, renormalizing after each draw. Requires k proposals with
/// positive weight.
CandidateSet sample_categorical(const ProposalMixture& mixture, int k,
                                std::uint64_t seed);

/// The k proposals with the highest effective weight, descending; ties are
/// broken by (model index, proposal index).
CandidateSet sample_topk(const ProposalMixture& mixture, int k);

/// Lloyd's algorithm on trajectories flattened to 2T-vectors, k-means++
/// seeding, then each centroid mapped to its nearest still-unused proposal
/// (greedy, ascending centroid-to-proposal distance). Output is ordered by
/// descending cluster weight mass.
CandidateSet kmeans_select(const ProposalMixture& mixture,
                           const KMeansConfig& config);

/// Greedy non-maximum suppression: repeatedly select the highest-weight
/// remaining proposal and drop every remaining proposal within the ADE
/// threshold of it. If the pool empties before k selections, suppressed
/// proposals are re-admitted in descending original weight order.
CandidateSet nms_select(const ProposalMixture& mixture, int k,
                        const NmsConfig& config);

/// KMeans refinement seeded with the NMS selection instead of k-means++.
CandidateSet nms_kmeans_select(const ProposalMixture& mixture, int k,
                               const NmsConfig& nms_config,
                               const KMeansConfig& kmeans_config);

}  // namespace trajsample
