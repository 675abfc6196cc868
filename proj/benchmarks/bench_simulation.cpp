#include <demosim/defaults.h>
#include <demosim/engine.h>
#include <demosim/events.h>
#include <demosim/init.h>
#include <demosim/predicates.h>
#include <demosim/sampling.h>

#include <benchmark/benchmark.h>

#include <numeric>

namespace {

using namespace demosim;

SimTime daily() {
    SimTime t;
    t.t0_year = 2020;
    t.steps_per_year = 365;
    return t;
}

void BM_Initialize(benchmark::State& state) {
    ModelParams params;
    params.initial_pop = static_cast<int>(state.range(0));
    const DensityMap density = default_density_map();
    std::uint64_t seed = 1;
    for (auto _ : state) {
        Rng rng(seed++);
        WorldState w = initialize(density, params, daily(), rng);
        benchmark::DoNotOptimize(w.persons.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Initialize)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_DailyStep(benchmark::State& state) {
    ModelParams params;
    params.initial_pop = static_cast<int>(state.range(0));
    const ModelData data = default_model_data();
    const EventOrder order;
    Rng rng(7);
    WorldState w = initialize(default_density_map(), params, daily(), rng);
    SnapshotStore snaps;
    snaps.freeze(w);
    for (auto _ : state) {
        StepOutcome o = step(w, snaps, params, data, order, rng);
        benchmark::DoNotOptimize(o.births.size());
    }
}
BENCHMARK(BM_DailyStep)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_FilterMarriedAdults(benchmark::State& state) {
    ModelParams params;
    params.initial_pop = 10000;
    Rng rng(3);
    const WorldState w = initialize(default_density_map(), params, daily(), rng);
    SnapshotStore snaps;
    const SubPopulation everyone = SubPopulation::everyone(w);
    const BooleanPredicate pred = features::adult() && features::married() && features::male();
    for (auto _ : state) {
        SubPopulation s = filter(pred, everyone, w, snaps);
        benchmark::DoNotOptimize(s.size());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(everyone.size()));
}
BENCHMARK(BM_FilterMarriedAdults);

void BM_WeightedIndex(benchmark::State& state) {
    std::vector<double> weights(static_cast<std::size_t>(state.range(0)));
    std::iota(weights.begin(), weights.end(), 1.0);
    Rng rng(11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(weighted_index(weights, rng));
    }
}
BENCHMARK(BM_WeightedIndex)->Arg(10)->Arg(100)->Arg(1000);

} // namespace
BENCHMARK_MAIN();
