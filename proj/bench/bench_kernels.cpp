#include "cvint/mzi.hpp"
#include "cvint/teleport.hpp"
#include <benchmark/benchmark.h>

namespace {

const cvint::CoherenceParams kParams{0.4, 0.7, 0.3};

void bm_teleport_serial(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto rep = cvint::simulate_teleportation(kParams, 2.0, 0.95, n, 1234,
                                                 cvint::Execution::serial);
        benchmark::DoNotOptimize(rep.max_abs_deviation);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void bm_teleport_parallel(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto rep = cvint::simulate_teleportation(kParams, 2.0, 0.95, n, 1234,
                                                 cvint::Execution::parallel);
        benchmark::DoNotOptimize(rep.max_abs_deviation);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void bm_mzi_fock_serial(benchmark::State& state) {
    const int cutoff = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto rep = cvint::mzi_fock_check({1.0, 0.5, 0.7}, cutoff, false);
        benchmark::DoNotOptimize(rep.var_abs_dev);
    }
}

void bm_mzi_fock_parallel(benchmark::State& state) {
    const int cutoff = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto rep = cvint::mzi_fock_check({1.0, 0.5, 0.7}, cutoff, true);
        benchmark::DoNotOptimize(rep.var_abs_dev);
    }
}

} // namespace

BENCHMARK(bm_teleport_serial)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_teleport_parallel)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_mzi_fock_serial)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_mzi_fock_parallel)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
