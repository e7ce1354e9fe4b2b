#include "trajsample/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "trajsample/errors.hpp"
#include "trajsample/io.hpp"
#include "trajsample/rng.hpp"

namespace trajsample {

namespace {

/// Runs fn(i) for i in [0, n) on `threads` workers (0 = hardware
/// concurrency). Work is pulled from a shared counter; each result must be
/// written to a slot indexed by i so the outcome is schedule-independent.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  std::size_t workers = threads > 0
                            ? static_cast<std::size_t>(threads)
                            : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void check_eval_options(const EvalOptions& options) {
  if (options.num_candidates < 1) {
    throw std::invalid_argument("need at least one candidate per scenario");
  }
  if (options.ks.empty()) throw std::invalid_argument("need at least one k");
  for (int k : options.ks) {
    if (k < 1 || k > options.num_candidates) {
      throw std::invalid_argument(
          "every k must lie in [1, candidate count], got " + std::to_string(k));
    }
  }
}

std::vector<ScenarioMetrics> score_dataset(const std::vector<Scenario>& dataset,
                                           const SamplerSpec& spec,
                                           const EvalOptions& options) {
  std::vector<ScenarioMetrics> rows(dataset.size());
  parallel_for(dataset.size(), options.threads, [&](std::size_t i) {
    const Scenario& scenario = dataset[i];
    const CandidateSet candidates =
        run_sampler(spec, scenario.mixture, options.num_candidates,
                    scenario_seed(options.master_seed, scenario.scenario_id));
    rows[i] = score_candidates(scenario, candidates, options.ks);
  });
  return rows;
}

void append_metric_curves(SweepResult& sweep, const std::string& sampler,
                          const std::vector<int>& ks,
                          const std::vector<MetricReport>& reports) {
  for (std::size_t ki = 0; ki < ks.size(); ++ki) {
    SweepCurve ade_curve{sampler, "min_ade_" + std::to_string(ks[ki]), {}};
    SweepCurve fde_curve{sampler, "min_fde_" + std::to_string(ks[ki]), {}};
    for (const MetricReport& report : reports) {
      ade_curve.values.push_back(report.mean_min_ade[ki]);
      fde_curve.values.push_back(report.mean_min_fde[ki]);
    }
    sweep.curves.push_back(std::move(ade_curve));
    sweep.curves.push_back(std::move(fde_curve));
  }
}

}  // namespace

SamplerSpec make_sampler_spec(const std::string& name) {
  SamplerSpec spec;
  spec.name = name;
  if (name == "uniform") {
    spec.kind = SamplerKind::Uniform;
  } else if (name == "categorical") {
    spec.kind = SamplerKind::Categorical;
  } else if (name == "topk") {
    spec.kind = SamplerKind::Topk;
  } else if (name == "kmeans") {
    spec.kind = SamplerKind::KMeans;
  } else if (name == "nms") {
    spec.kind = SamplerKind::Nms;
  } else if (name == "nms_kmeans") {
    spec.kind = SamplerKind::NmsKMeans;
  } else if (name == "ours") {
    spec.kind = SamplerKind::RiskOptimizer;
  } else {
    throw ConfigError("sampler", "unknown sampler: " + name);
  }
  return spec;
}

std::vector<std::string> known_sampler_names() {
  return {"uniform", "categorical", "topk",
          "kmeans",  "nms",         "nms_kmeans",
          "ours"};
}

CandidateSet run_sampler(const SamplerSpec& spec, const ProposalMixture& mixture,
                         int num_candidates, std::uint64_t seed) {
  switch (spec.kind) {
    case SamplerKind::Uniform:
      return sample_uniform(mixture, num_candidates, seed);
    case SamplerKind::Categorical:
      return sample_categorical(mixture, num_candidates, seed);
    case SamplerKind::Topk:
      return sample_topk(mixture, num_candidates);
    case SamplerKind::KMeans: {
      KMeansConfig config = spec.kmeans;
      config.clusters = num_candidates;
      config.seed = seed;
      return kmeans_select(mixture, config);
    }
    case SamplerKind::Nms:
      return nms_select(mixture, num_candidates, spec.nms);
    case SamplerKind::NmsKMeans:
      return nms_kmeans_select(mixture, num_candidates, spec.nms, spec.kmeans);
    case SamplerKind::RiskOptimizer: {
      OptimizerConfig config = spec.optimizer;
      config.seed = seed;
      return optimize(mixture, num_candidates, spec.loss, config).first;
    }
  }
  throw std::logic_error("unhandled sampler kind");
}

std::uint64_t scenario_seed(std::uint64_t master_seed,
                            const std::string& scenario_id) {
  return mix_seed(master_seed, fnv1a64(scenario_id));
}

MetricReport evaluate_sampler(const std::vector<Scenario>& dataset,
                              const SamplerSpec& spec,
                              const EvalOptions& options) {
  check_eval_options(options);
  return aggregate(score_dataset(dataset, spec, options), options.ks);
}

ComparisonTable compare_samplers(const std::vector<Scenario>& dataset,
                                 const std::vector<SamplerSpec>& specs,
                                 const EvalOptions& options) {
  check_eval_options(options);
  ComparisonTable table;
  table.ks = options.ks;
  table.rows.reserve(specs.size());
  for (const SamplerSpec& spec : specs) {
    const auto start = std::chrono::steady_clock::now();
    MetricReport report = evaluate_sampler(dataset, spec, options);
    const auto stop = std::chrono::steady_clock::now();
    table.rows.push_back(
        {spec.name, std::move(report),
         std::chrono::duration<double>(stop - start).count()});
  }
  return table;
}

std::string to_csv(const ComparisonTable& table) {
  std::string out = "sampler";
  for (int k : table.ks) out += ",min_ade_" + std::to_string(k);
  for (int k : table.ks) out += ",min_fde_" + std::to_string(k);
  out += '\n';
  for (const ComparisonRow& row : table.rows) {
    out += row.sampler;
    for (double v : row.report.mean_min_ade) out += ',' + format_double(v);
    for (double v : row.report.mean_min_fde) out += ',' + format_double(v);
    out += '\n';
  }
  return out;
}

SweepResult proposal_count_sweep(const WorldConfig& world,
                                 EnsembleEmulation ensemble, int scenario_count,
                                 const std::vector<int>& counts,
                                 const std::vector<SamplerSpec>& specs,
                                 const EvalOptions& options) {
  check_eval_options(options);
  if (counts.empty()) throw std::invalid_argument("need at least one count");
  const int M = static_cast<int>(ensemble.models.size());
  for (int count : counts) {
    if (count < M || count % M != 0) {
      throw std::invalid_argument(
          "proposal counts must be positive multiples of the model count");
    }
  }

  SweepResult sweep;
  sweep.axis = "proposal_count";
  sweep.xs.assign(counts.begin(), counts.end());

  std::vector<std::vector<MetricReport>> reports(specs.size());
  for (int count : counts) {
    ensemble.proposals_per_model = count / M;
    const std::vector<Scenario> dataset =
        generate_dataset(world, ensemble, scenario_count, options.master_seed);
    for (std::size_t s = 0; s < specs.size(); ++s) {
      reports[s].push_back(evaluate_sampler(dataset, specs[s], options));
    }
  }

  for (std::size_t s = 0; s < specs.size(); ++s) {
    append_metric_curves(sweep, specs[s].name, options.ks, reports[s]);
  }
  // Deltas against the first count, mirroring change-from-baseline plots.
  const std::size_t base_curves = sweep.curves.size();
  for (std::size_t c = 0; c < base_curves; ++c) {
    SweepCurve delta{sweep.curves[c].sampler, "delta_" + sweep.curves[c].metric,
                     {}};
    for (double v : sweep.curves[c].values) {
      delta.values.push_back(v - sweep.curves[c].values.front());
    }
    sweep.curves.push_back(std::move(delta));
  }
  return sweep;
}

SweepResult nms_threshold_sweep(const std::vector<Scenario>& dataset,
                                const std::vector<double>& thresholds,
                                const EvalOptions& options) {
  check_eval_options(options);
  if (thresholds.empty()) {
    throw std::invalid_argument("need at least one threshold");
  }
  for (double threshold : thresholds) {
    if (!(threshold > 0.0)) {
      throw std::invalid_argument("thresholds must be positive");
    }
  }

  SweepResult sweep;
  sweep.axis = "nms_threshold";
  sweep.xs = thresholds;

  SamplerSpec spec = make_sampler_spec("nms_kmeans");
  std::vector<MetricReport> reports;
  reports.reserve(thresholds.size());
  for (double threshold : thresholds) {
    spec.nms.threshold = threshold;
    reports.push_back(evaluate_sampler(dataset, spec, options));
  }
  append_metric_curves(sweep, spec.name, options.ks, reports);
  return sweep;
}

std::string to_csv(const SweepResult& sweep) {
  std::string out = "x,sampler,metric,value\n";
  for (const SweepCurve& curve : sweep.curves) {
    for (std::size_t i = 0; i < sweep.xs.size(); ++i) {
      out += format_double(sweep.xs[i]) + ',' + curve.sampler + ',' +
             curve.metric + ',' + format_double(curve.values[i]) + '\n';
    }
  }
  return out;
}

}  // namespace trajsample
