#include <benchmark/benchmark.h>

#include <filesystem>
#include <memory>

#include "signet/ensemble.hpp"
#include "signet/io.hpp"
#include "signet/sde.hpp"

using namespace signet;

namespace {

SimConfig reference_config(const char* schedule, double horizon) {
  SimConfig cfg;
  cfg.schedule = std::make_shared<const TopologySchedule>(
      io::read_schedule(std::filesystem::path(SIGNET_ASSET_DIR) / schedule));
  cfg.gain = GainSpec::power(1.0, 1.0);
  cfg.sigma_add = 0.4;
  cfg.intensity = NoiseIntensity::linear(0.3);
  cfg.dt = 1e-3;
  cfg.horizon = horizon;
  cfg.seed = 5;
  return cfg;
}

void BM_Drift(benchmark::State& state) {
  const SimConfig cfg = reference_config("switching.json", 1.0);
  const Vector x = initial_state(cfg, 0);
  const Topology& top = cfg.schedule->at_time(0.05);
  for (auto _ : state) benchmark::DoNotOptimize(drift(0.5, x, top, cfg.gain));
}
BENCHMARK(BM_Drift);

// One path of 1000 Euler-Maruyama steps on the 7-agent network.
void BM_PathSteps(benchmark::State& state) {
  const SimConfig cfg = reference_config(state.range(0) ? "switching.json" : "fixed_g1.json", 1.0);
  std::uint32_t path = 0;
  for (auto _ : state) {
    integrate_path(cfg, path++, cfg.steps(),
                   [](std::size_t, double, std::span<const double> x) {
                     benchmark::DoNotOptimize(x.data());
                   });
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.steps()));
}
BENCHMARK(BM_PathSteps)->Arg(0)->Arg(1);

void BM_Ensemble(benchmark::State& state) {
  const SimConfig cfg = reference_config("switching.json", 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(run_ensemble(cfg, static_cast<std::size_t>(state.range(0)), 100, 1));
}
BENCHMARK(BM_Ensemble)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
