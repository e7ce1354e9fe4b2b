#include <benchmark/benchmark.h>

#include "trajsample/risk.hpp"
#include "trajsample/samplers.hpp"
#include "trajsample/synth.hpp"

namespace ts = trajsample;

namespace {

ts::Scenario make_scenario(int proposals_per_model) {
  ts::WorldConfig world;
  return ts::generate_scenario(world, ts::default_ensemble(proposals_per_model),
                               42);
}

void risk_value(benchmark::State& state) {
  auto scenario = make_scenario(static_cast<int>(state.range(0)));
  auto candidates = ts::sample_topk(scenario.mixture, 6);
  ts::LossSpec loss{ts::LossKind::MinAde, 6};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts::risk(scenario.mixture, candidates, loss));
  }
}
BENCHMARK(risk_value)->Arg(5)->Arg(10)->Arg(20)->Arg(40);

void risk_gradient(benchmark::State& state) {
  auto scenario = make_scenario(static_cast<int>(state.range(0)));
  auto candidates = ts::sample_topk(scenario.mixture, 6);
  ts::LossSpec loss{ts::LossKind::MinAde, 6};
  for (auto _ : state) {
    auto grad = ts::risk_subgradient(scenario.mixture, candidates, loss);
    benchmark::DoNotOptimize(grad);
  }
}
BENCHMARK(risk_gradient)->Arg(5)->Arg(10)->Arg(20)->Arg(40);

void adam_step(benchmark::State& state) {
  auto scenario = make_scenario(10);
  auto candidates = ts::sample_topk(scenario.mixture, 6);
  ts::LossSpec loss{ts::LossKind::MinAde, 6};
  ts::OptimizerConfig config;
  auto gradient = ts::risk_subgradient(scenario.mixture, candidates, loss);
  ts::AdamState adam(candidates.size() * scenario.mixture.horizon * 2);
  for (auto _ : state) {
    ts::adam_update(adam, candidates, gradient, config);
    benchmark::DoNotOptimize(candidates);
  }
}
BENCHMARK(adam_step);

void optimize_full(benchmark::State& state) {
  auto scenario = make_scenario(static_cast<int>(state.range(0)));
  ts::LossSpec loss{ts::LossKind::MinAde, 6};
  ts::OptimizerConfig config;
  config.steps = static_cast<int>(state.range(1));
  config.seed = 7;
  for (auto _ : state) {
    auto result = ts::optimize(scenario.mixture, 6, loss, config);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(optimize_full)
    ->Args({10, 64})
    ->Args({10, 256})
    ->Args({20, 256})
    ->Args({40, 256})
    ->Unit(benchmark::kMillisecond);

}  // namespace
