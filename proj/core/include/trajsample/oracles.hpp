#pragma once

#include <cstddef>
#include <vector>

#include "trajsample/risk.hpp"
#include "trajsample/types.hpp"

namespace trajsample {

struct SubsetOracleResult {
  std::vector<std::size_t> indices;  // flat proposal indices of the best subset
  double risk = 0.0;
};

/// Exhaustively evaluates every size-S subset of the proposal pool and
/// returns the lowest-risk one. Guarded to pools of at most 16 proposals;
/// larger pools throw TooManyProposals.
SubsetOracleResult brute_force_subset_oracle(const ProposalMixture& mixture,
                                             int num_candidates,
                                             const LossSpec& loss);

/// Per-timestep weighted geometric median of the proposal points, computed
/// by Weiszfeld iteration (tolerance 1e-9, at most 1e4 iterations, with a
/// 1e-9 perturbation whenever an iterate lands on a data point). This is the
/// closed-form optimum for a single candidate under the average-distance
/// risk, so it cross-checks the gradient optimizer at S=1, k=1.
Trajectory geometric_median_oracle(const ProposalMixture& mixture);

/// Central-difference gradient of risk() with respect to every candidate
/// coordinate. Same shape as `candidates`.
std::vector<Trajectory> finite_difference_gradient(
    const ProposalMixture& mixture, const CandidateSet& candidates,
    const LossSpec& loss, double h = 1e-5);

}  // namespace trajsample
