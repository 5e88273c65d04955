#include <benchmark/benchmark.h>

#include "opart/table.hpp"

static void BM_SeriesTable(benchmark::State& state) {
    long n_max = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(opart::series_table(n_max));
    }
    state.SetComplexityN(n_max);
}
BENCHMARK(BM_SeriesTable)->Arg(500)->Arg(2000)->Arg(5506)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_SparseTable(benchmark::State& state) {
    long n_max = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(opart::sparse_table(n_max));
    }
    state.SetComplexityN(n_max);
}
BENCHMARK(BM_SparseTable)->Arg(500)->Arg(2000)->Arg(8001)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_Enumeration(benchmark::State& state) {
    long n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(opart::enumerate_overpartitions(n));
    }
}
BENCHMARK(BM_Enumeration)->Arg(20)->Arg(30)->Arg(40);

static void BM_Checksum(benchmark::State& state) {
    opart::OverpartitionTable t = opart::sparse_table(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(opart::table_checksum(t));
    }
}
BENCHMARK(BM_Checksum)->Arg(5506);

BENCHMARK_MAIN();
