#include "trajsample/metrics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

namespace trajsample {

namespace {

void check_equal_horizon(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) {
    throw HorizonMismatch("trajectories span " + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + " timesteps");
  }
  if (a.empty()) {
    throw HorizonMismatch("trajectories must span at least one timestep");
  }
}

void check_prefix(const CandidateSet& candidates, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (static_cast<std::size_t>(k) > candidates.size()) {
    throw KExceedsSetSize("k=" + std::to_string(k) + " exceeds candidate set size " +
                          std::to_string(candidates.size()));
  }
}

}  // namespace

double ade(const Trajectory& reference, const Trajectory& candidate) {
  check_equal_horizon(reference, candidate);
  double sum = 0.0;
  for (std::size_t t = 0; t < reference.size(); ++t) {
    sum += norm(reference[t] - candidate[t]);
  }
  return sum / static_cast<double>(reference.size());
}

double fde(const Trajectory& reference, const Trajectory& candidate) {
  check_equal_horizon(reference, candidate);
  return norm(reference.back() - candidate.back());
}

double min_ade_k(const Trajectory& reference, const CandidateSet& candidates,
                 int k) {
  check_prefix(candidates, k);
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < k; ++s) {
    best = std::min(best, ade(reference, candidates[static_cast<std::size_t>(s)]));
  }
  return best;
}

double min_fde_k(const Trajectory& reference, const CandidateSet& candidates,
                 int k) {
  check_prefix(candidates, k);
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < k; ++s) {
    best = std::min(best, fde(reference, candidates[static_cast<std::size_t>(s)]));
  }
  return best;
}

ScenarioMetrics score_candidates(const Scenario& scenario,
                                 const CandidateSet& candidates,
                                 const std::vector<int>& ks) {
  if (!scenario.ground_truth.has_value()) {
    throw MissingGroundTruth("scenario '" + scenario.scenario_id +
                             "' has no ground-truth trajectory");
  }
  ScenarioMetrics row;
  row.scenario_id = scenario.scenario_id;
  row.min_ade.reserve(ks.size());
  row.min_fde.reserve(ks.size());
  for (int k : ks) {
    row.min_ade.push_back(min_ade_k(*scenario.ground_truth, candidates, k));
    row.min_fde.push_back(min_fde_k(*scenario.ground_truth, candidates, k));
  }
  return row;
}

MetricReport aggregate(std::vector<ScenarioMetrics> rows,
                       std::vector<int> ks) {
  MetricReport report;
  report.ks = std::move(ks);
  report.mean_min_ade.assign(report.ks.size(), 0.0);
  report.mean_min_fde.assign(report.ks.size(), 0.0);
  for (const ScenarioMetrics& row : rows) {
    if (row.min_ade.size() != report.ks.size() ||
        row.min_fde.size() != report.ks.size()) {
      throw std::invalid_argument("scenario metrics do not match k list");
    }
    for (std::size_t i = 0; i < report.ks.size(); ++i) {
      report.mean_min_ade[i] += row.min_ade[i];
      report.mean_min_fde[i] += row.min_fde[i];
    }
  }
  if (!rows.empty()) {
    const double count = static_cast<double>(rows.size());
    for (std::size_t i = 0; i < report.ks.size(); ++i) {
      report.mean_min_ade[i] /= count;
      report.mean_min_fde[i] /= count;
    }
  }
  report.per_scenario = std::move(rows);
  return report;
}

}  // namespace trajsample
