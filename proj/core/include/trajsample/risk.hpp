#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "trajsample/types.hpp"

namespace trajsample {

enum class LossKind { MinAde, MinFde };

/// The loss whose expectation under the proposal mixture is minimized.
/// k = 0 is a placeholder meaning "use the candidate count"; callers resolve
/// it before invoking risk().
struct LossSpec {
  LossKind kind = LossKind::MinAde;
  int k = 0;
};

enum class InitStrategy {
  CategoricalDraw,  // draw proposals by effective weight, then jitter
  UniformDraw,      // draw proposals uniformly, then jitter
  GaussianNoise,    // start every candidate at the weighted proposal centroid
};

struct OptimizerConfig {
  double learning_rate = 0.1;
  int steps = 256;
  // Per-step multiplier on the learning rate. 1 keeps it constant (the
  // reference schedule); values < 1 give a geometric decay, which Adam needs
  // to polish below its step size when an oracle-grade optimum is required.
  double lr_decay = 1.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  InitStrategy init = InitStrategy::CategoricalDraw;
  double jitter_sigma = 0.01;  // meters, per coordinate
  std::uint64_t seed = 0;
  bool keep_best_iterate = true;
  // Optional stop once the best risk seen has not improved by a relative
  // 1e-7 within a 32-step window. Off by default: the reference schedule is
  // a fixed step count.
  bool early_stop = false;
};

/// Diagnostics of one optimization run. risk_per_step[0] is the risk of the
/// initial candidate set; entry i the risk after step i.
struct OptimizationTrace {
  std::vector<double> risk_per_step;
  double final_risk = 0.0;
  int best_step = 0;
};

/// Expected loss of the candidate set under the proposal mixture:
/// the weighted sum, over all proposals, of the minimum ADE (or FDE) between
/// that proposal and the first k candidates. Each proposal acts as the
/// reference; the candidate prefix supplies the min.
double risk(const ProposalMixture& mixture, const CandidateSet& candidates,
            const LossSpec& loss);

/// Subgradient of risk() with respect to every candidate coordinate; the
/// result has the shape of the candidate set. Only the arg-min candidate of
/// each proposal (ties broken toward the lowest index) receives a
/// contribution; coincident points (norm below 1e-12) contribute zero.
std::vector<Trajectory> risk_subgradient(const ProposalMixture& mixture,
                                         const CandidateSet& candidates,
                                         const LossSpec& loss);

/// First/second moment estimates for Adam, flattened over all candidate
/// coordinates in candidate-major, timestep, x/y order.
struct AdamState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  long step = 0;

  explicit AdamState(std::size_t size)
      : first_moment(size, 0.0), second_moment(size, 0.0) {}
};

/// One Adam step with bias correction, applied in place to the candidates.
void adam_update(AdamState& state, CandidateSet& candidates,
                 const std::vector<Trajectory>& gradient,
                 const OptimizerConfig& config);

/// Draws the initial candidate set per config.init and adds per-coordinate
/// Gaussian jitter of config.jitter_sigma. Deterministic given config.seed.
CandidateSet random_init(const ProposalMixture& mixture, int num_candidates,
                         const OptimizerConfig& config);

/// Runs the full loop: random_init, then config.steps Adam steps on the
/// candidate coordinates against risk(). Returns the best-risk iterate when
/// config.keep_best_iterate, else the last, ordered most-preferred first:
/// greedy forward selection by marginal risk contribution, so every k-prefix
/// approximates the best k-subset of the output.
std::pair<CandidateSet, OptimizationTrace> optimize(
    const ProposalMixture& mixture, int num_candidates, const LossSpec& loss,
    const OptimizerConfig& config);

}  // namespace trajsample
