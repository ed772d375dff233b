#include <benchmark/benchmark.h>

#include <numbers>

#include "vsmpriv/evaluation.hpp"
#include "vsmpriv/rng.hpp"
#include "vsmpriv/scene.hpp"
#include "vsmpriv/selection.hpp"
#include "vsmpriv/spectral.hpp"

namespace {

using namespace vsmpriv;

constexpr double kDeg = std::numbers::pi / 180.0;

SceneConfig default_scene() {
  SceneConfig scene;
  scene.snr_db = 10.0;
  return scene;
}

void BM_EnumeratePhaseSet(benchmark::State& state) {
  ArrayGeometry geometry;
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto ps = enumerate_phase_set(geometry, 30.0 * kDeg, 39.0 * kDeg, l);
    benchmark::DoNotOptimize(ps);
  }
}
BENCHMARK(BM_EnumeratePhaseSet)->Arg(4)->Arg(8)->Arg(12);

void BM_SynthesizeTrace(benchmark::State& state) {
  const SceneConfig scene = default_scene();
  const VitalSignProfile vitals;
  const auto model = conventional_model(scene.geometry, scene.theta0_rad);
  const auto schedule = generate_schedule(model, scene.sample_count(), 1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto trace = synthesize_trace(scene, vitals, schedule, Receiver::eavesdropper, ++seed);
    benchmark::DoNotOptimize(trace);
  }
}
BENCHMARK(BM_SynthesizeTrace);

void BM_DetectVitals(benchmark::State& state) {
  const SceneConfig scene = default_scene();
  const VitalSignProfile vitals;
  const auto model = conventional_model(scene.geometry, scene.theta0_rad);
  const auto schedule = generate_schedule(model, scene.sample_count(), 1);
  const auto trace = synthesize_trace(scene, vitals, schedule, Receiver::eavesdropper, 7);
  for (auto _ : state) {
    auto report = detect_vitals(trace, kDefaultBandLowHz, kDefaultBandHighHz);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_DetectVitals);

void BM_PodTrialBatch(benchmark::State& state) {
  const SceneConfig scene = default_scene();
  const VitalSignProfile vitals;
  PodConfig config;
  config.n_trials = static_cast<int>(state.range(0));
  config.snr_grid_db = {10.0};
  config.schemes = {Scheme::conventional};
  config.n_threads = 1;
  const SchemeSolutions solutions;
  for (auto _ : state) {
    auto curve = run_pod_sweep(scene, vitals, config, solutions);
    benchmark::DoNotOptimize(curve);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PodTrialBatch)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Mpv2Oracle(benchmark::State& state) {
  ArrayGeometry geometry;
  const auto ps = enumerate_phase_set(geometry, 30.0 * kDeg, 39.0 * kDeg, 12);
  for (auto _ : state) {
    const double v = mpv2_oracle(ps, static_cast<std::size_t>(state.range(0)), 3, 1);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Mpv2Oracle)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
