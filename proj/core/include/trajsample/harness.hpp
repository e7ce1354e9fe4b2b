#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trajsample/metrics.hpp"
#include "trajsample/risk.hpp"
#include "trajsample/samplers.hpp"
#include "trajsample/synth.hpp"
#include "trajsample/types.hpp"

namespace trajsample {

enum class SamplerKind {
  Uniform,
  Categorical,
  Topk,
  KMeans,
  Nms,
  NmsKMeans,
  RiskOptimizer,
};

/// A fully configured sampler. `name` labels table rows and CSV output.
struct SamplerSpec {
  SamplerKind kind = SamplerKind::Topk;
  std::string name = "topk";
  NmsConfig nms;
  KMeansConfig kmeans;
  OptimizerConfig optimizer;
  LossSpec loss;
};

/// Builds a spec with defaults from one of the canonical names: uniform,
/// categorical, topk, kmeans, nms, nms_kmeans, ours. Throws ConfigError on
/// anything else.
SamplerSpec make_sampler_spec(const std::string& name);

std::vector<std::string> known_sampler_names();

/// Runs one sampler on one mixture. The seed overrides the per-run seed of
/// stochastic samplers; deterministic samplers ignore it.
CandidateSet run_sampler(const SamplerSpec& spec, const ProposalMixture& mixture,
                         int num_candidates, std::uint64_t seed);

struct EvalOptions {
  int num_candidates = 10;        // S, outputs per scenario
  std::vector<int> ks = {1, 5, 10};
  std::uint64_t master_seed = 42;
  int threads = 1;                // 0 = hardware concurrency
};

/// Per-scenario sampler seed, derived from the master seed and the scenario
/// id so results are independent of evaluation order and parallelism.
std::uint64_t scenario_seed(std::uint64_t master_seed,
                            const std::string& scenario_id);

/// Runs the sampler over the dataset and aggregates minADE_k / minFDE_k for
/// every k in options.ks, scored on the k-prefix of each candidate set.
MetricReport evaluate_sampler(const std::vector<Scenario>& dataset,
                              const SamplerSpec& spec,
                              const EvalOptions& options);

struct ComparisonRow {
  std::string sampler;
  MetricReport report;
  double wall_seconds = 0.0;
};

struct ComparisonTable {
  std::vector<int> ks;
  std::vector<ComparisonRow> rows;
};

/// One evaluate_sampler row per spec, on identical scenarios with identical
/// per-scenario seeds, so row differences are attributable to the samplers.
ComparisonTable compare_samplers(const std::vector<Scenario>& dataset,
                                 const std::vector<SamplerSpec>& specs,
                                 const EvalOptions& options);

/// CSV with header sampler,min_ade_<k>...,min_fde_<k>... and 9 significant
/// digits per cell. Wall-clock stays out of the CSV so identical runs are
/// byte-identical; it is available on the rows for reporting.
std::string to_csv(const ComparisonTable& table);

struct SweepCurve {
  std::string sampler;
  std::string metric;
  std::vector<double> values;
};

struct SweepResult {
  std::string axis;  // "proposal_count" or "nms_threshold"
  std::vector<double> xs;
  std::vector<SweepCurve> curves;
};

/// Regenerates the dataset at each proposal count (count/M proposals per
/// model; ground truth is identical across counts) and evaluates every spec.
/// Curves cover min_ade_k / min_fde_k per k plus delta_* curves relative to
/// the first count.
SweepResult proposal_count_sweep(const WorldConfig& world,
                                 EnsembleEmulation ensemble, int scenario_count,
                                 const std::vector<int>& counts,
                                 const std::vector<SamplerSpec>& specs,
                                 const EvalOptions& options);

/// Evaluates NMS+KMeans at each suppression threshold.
SweepResult nms_threshold_sweep(const std::vector<Scenario>& dataset,
                                const std::vector<double>& thresholds,
                                const EvalOptions& options);

/// Line-oriented CSV: x,sampler,metric,value.
std::string to_csv(const SweepResult& sweep);

}  // namespace trajsample
