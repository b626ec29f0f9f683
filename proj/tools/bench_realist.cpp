// Benchmark of the OpenMP realist-metrics kernel against the serial
// reference on large ontic spaces.

#include <benchmark/benchmark.h>

#include "qdev/realist.hpp"

namespace {

qdev::EpistemicEnsemble make_ensemble(int n, int L) {
    return qdev::random_ensemble(n, L, 12345);
}

void bm_realist_metrics_parallel(benchmark::State& state) {
    const auto ens = make_ensemble(6, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto rep = qdev::realist_metrics(ens);
        benchmark::DoNotOptimize(rep.deviation);
    }
}

void bm_realist_metrics_serial(benchmark::State& state) {
    const auto ens = make_ensemble(6, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto rep = qdev::realist_metrics_serial(ens);
        benchmark::DoNotOptimize(rep.deviation);
    }
}

}  // namespace

BENCHMARK(bm_realist_metrics_parallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_realist_metrics_serial)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
