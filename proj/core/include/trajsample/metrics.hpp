#pragma once

#include <string>
#include <vector>

#include "trajsample/types.hpp"

namespace trajsample {

/// Average displacement error: mean Euclidean distance over timesteps.
double ade(const Trajectory& reference, const Trajectory& candidate);

/// Final displacement error: Euclidean distance at the last timestep.
double fde(const Trajectory& reference, const Trajectory& candidate);

/// Minimum ADE between the reference and the first k candidates. Candidate
/// sets are ordered most-preferred first, so the k-prefix is the sampler's
/// best k guesses. Throws KExceedsSetSize when k exceeds the set size.
double min_ade_k(const Trajectory& reference, const CandidateSet& candidates,
                 int k);

/// Minimum FDE between the reference and the first k candidates.
double min_fde_k(const Trajectory& reference, const CandidateSet& candidates,
                 int k);

/// Per-scenario metric values, aligned with the requested k list.
struct ScenarioMetrics {
  std::string scenario_id;
  std::vector<double> min_ade;
  std::vector<double> min_fde;
};

/// Scores a candidate set against the scenario's ground truth for every
/// requested k. Throws MissingGroundTruth when the scenario has none.
ScenarioMetrics score_candidates(const Scenario& scenario,
                                 const CandidateSet& candidates,
                                 const std::vector<int>& ks);

/// Dataset-level metrics: per-scenario values plus their arithmetic means.
struct MetricReport {
  std::vector<int> ks;
  std::vector<ScenarioMetrics> per_scenario;
  std::vector<double> mean_min_ade;
  std::vector<double> mean_min_fde;

  std::size_t scenario_count() const { return per_scenario.size(); }
};

/// Averages per-scenario rows into a report. Every row must carry one value
/// per requested k.
MetricReport aggregate(std::vector<ScenarioMetrics> rows, std::vector<int> ks);

}  // namespace trajsample
