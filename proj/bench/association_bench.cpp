#include <benchmark/benchmark.h>

#include <omp.h>

#include "hetnet/association.hpp"
#include "hetnet/engine.hpp"
#include "hetnet/reference.hpp"

namespace {

using namespace hetnet;

const Drop& bench_drop(double femto_density) {
  static std::vector<std::pair<double, Drop>> cache;
  for (const auto& [d, drop] : cache) {
    if (d == femto_density) return drop;
  }
  ScenarioConfig c;
  c.region = Region(2.0);
  c.tiers[kFemtoTier].density_per_km2 = femto_density;
  c.master_seed = 7;
  cache.emplace_back(femto_density, realize_drop(c, 0));
  return cache.back().second;
}

const PathLossModel kModel = PathLossModel::dual_slope(3.0, 4.0);

void BM_BruteForce(benchmark::State& state) {
  const Drop& drop = bench_drop(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference::associate_all(drop, kModel, DownlinkPolicy::femto_bias(6.0), UplinkPolicy::decoupled));
  }
  state.counters["users"] = drop.user_count();
}

void BM_IndexedSerial(benchmark::State& state) {
  const Drop& drop = bench_drop(static_cast<double>(state.range(0)));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(associate_all(drop, kModel, DownlinkPolicy::femto_bias(6.0), UplinkPolicy::decoupled));
  }
  omp_set_num_threads(saved);
  state.counters["users"] = drop.user_count();
}

void BM_IndexedParallel(benchmark::State& state) {
  const Drop& drop = bench_drop(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(associate_all(drop, kModel, DownlinkPolicy::femto_bias(6.0), UplinkPolicy::decoupled));
  }
  state.counters["threads"] = omp_get_max_threads();
}

void BM_ScenarioDrops(benchmark::State& state) {
  ScenarioConfig c;
  c.region = Region(3.0);
  c.n_drops = 8;
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(c, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_BruteForce)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IndexedSerial)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IndexedParallel)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScenarioDrops)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
