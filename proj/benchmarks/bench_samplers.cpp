#include <benchmark/benchmark.h>

#include "trajsample/samplers.hpp"
#include "trajsample/synth.hpp"

namespace ts = trajsample;

namespace {

ts::Scenario make_scenario(int proposals_per_model) {
  ts::WorldConfig world;
  return ts::generate_scenario(world, ts::default_ensemble(proposals_per_model),
                               42);
}

void topk(benchmark::State& state) {
  auto scenario = make_scenario(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts::sample_topk(scenario.mixture, 6));
  }
}
BENCHMARK(topk)->Arg(10)->Arg(40);

void categorical(benchmark::State& state) {
  auto scenario = make_scenario(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts::sample_categorical(scenario.mixture, 6, 13));
  }
}
BENCHMARK(categorical)->Arg(10)->Arg(40);

void kmeans(benchmark::State& state) {
  auto scenario = make_scenario(static_cast<int>(state.range(0)));
  ts::KMeansConfig config;
  config.clusters = 6;
  config.seed = 13;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts::kmeans_select(scenario.mixture, config));
  }
}
BENCHMARK(kmeans)->Arg(10)->Arg(40);

void nms(benchmark::State& state) {
  auto scenario = make_scenario(static_cast<int>(state.range(0)));
  ts::NmsConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts::nms_select(scenario.mixture, 6, config));
  }
}
BENCHMARK(nms)->Arg(10)->Arg(40);

void nms_kmeans(benchmark::State& state) {
  auto scenario = make_scenario(static_cast<int>(state.range(0)));
  ts::NmsConfig nms_config;
  ts::KMeansConfig kmeans_config;
  kmeans_config.clusters = 6;
  kmeans_config.seed = 13;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ts::nms_kmeans_select(scenario.mixture, 6, nms_config, kmeans_config));
  }
}
BENCHMARK(nms_kmeans)->Arg(10)->Arg(40);

void scenario_generation(benchmark::State& state) {
  ts::WorldConfig world;
  auto ensemble = ts::default_ensemble(static_cast<int>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts::generate_scenario(world, ensemble, seed++));
  }
}
BENCHMARK(scenario_generation)->Arg(10)->Arg(40);

}  // namespace
