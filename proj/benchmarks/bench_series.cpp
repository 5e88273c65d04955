#include <benchmark/benchmark.h>

#include "opart/zuckerman.hpp"

namespace {
const opart::PrecisionContext kCtx{120, 20};
}

static void BM_OmegaExponent(benchmark::State& state) {
    long k = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(opart::omega_exponent(1, k));
    }
}
BENCHMARK(BM_OmegaExponent)->Arg(9)->Arg(45)->Arg(101);

static void BM_ZuckermanTerm(benchmark::State& state) {
    long k = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(opart::zuckerman_term(1000, k, kCtx));
    }
}
BENCHMARK(BM_ZuckermanTerm)->Arg(1)->Arg(9)->Arg(33);

static void BM_ZuckermanEstimate(benchmark::State& state) {
    long n = state.range(0);
    long r = 1;
    while (r * r < n) ++r;
    long terms = (r % 2 == 1) ? r : r + 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(opart::zuckerman_estimate(n, terms, kCtx));
    }
}
BENCHMARK(BM_ZuckermanEstimate)->Arg(100)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_Decompose(benchmark::State& state) {
    opart::OverpartitionTable t = opart::sparse_table(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(opart::decompose(state.range(0), t, kCtx));
    }
}
BENCHMARK(BM_Decompose)->Arg(100)->Arg(5000);
