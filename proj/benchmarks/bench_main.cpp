#include <benchmark/benchmark.h>

#include "alsel/alsel.hpp"

namespace {

using namespace alsel;

SynthPool make_pool(std::size_t samples_per_cluster) {
  SynthConfig cfg;
  cfg.samples_per_cluster = samples_per_cluster;
  return generate_pool(cfg);
}

void BM_DistanceMatrix(benchmark::State& state) {
  const auto synth = make_pool(static_cast<std::size_t>(state.range(0)));
  const auto reps = first_frame_reps(synth.pool).reps;
  for (auto _ : state) benchmark::DoNotOptimize(distance_matrix(reps, Metric::Cosine));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(reps.size() * reps.size()));
}
BENCHMARK(BM_DistanceMatrix)->Arg(20)->Arg(100);

void BM_MultiFrameReps(benchmark::State& state) {
  const auto synth = make_pool(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(multi_frame_reps(synth.pool, 10, 5));
}
BENCHMARK(BM_MultiFrameReps)->Arg(20)->Arg(100);

void BM_SelectFps(benchmark::State& state) {
  const auto synth = make_pool(100);
  const auto m = distance_matrix(first_frame_reps(synth.pool).reps, Metric::Cosine);
  const auto budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(select_fps(m, budget, 0));
}
BENCHMARK(BM_SelectFps)->Arg(10)->Arg(100)->Arg(500);

void BM_SelectKmal(benchmark::State& state) {
  const auto synth = make_pool(100);
  const auto m = distance_matrix(multi_frame_reps(synth.pool, 10, 5).reps, Metric::Cosine);
  const auto stats = nn_stats(m);
  const auto budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(select_kmal(m, stats, budget, 0));
}
BENCHMARK(BM_SelectKmal)->Arg(10)->Arg(100)->Arg(500);

void BM_TverskyLoss(benchmark::State& state) {
  const BBox b(0.1, 0.2, 2.3, 1.9), gt(0.4, 0.1, 2.0, 2.2);
  const LossParams params;
  const bool grad = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(tversky_loss(b, gt, params, grad));
}
BENCHMARK(BM_TverskyLoss)->Arg(0)->Arg(1);

void BM_GeneratePool(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(make_pool(40));
}
BENCHMARK(BM_GeneratePool);

}  // namespace
BENCHMARK_MAIN();
