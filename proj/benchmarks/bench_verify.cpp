#include <benchmark/benchmark.h>

#include "opart/verify.hpp"

namespace {

const opart::PrecisionContext kCtx{120, 20};

const opart::OverpartitionTable& table() {
    static const opart::OverpartitionTable t = opart::sparse_table(5601);
    return t;
}

}  // namespace

static void BM_Delta2LogR(benchmark::State& state) {
    const auto& t = table();
    for (auto _ : state) {
        benchmark::DoNotOptimize(opart::delta2_log_r(state.range(0), 0, t, kCtx));
    }
}
BENCHMARK(BM_Delta2LogR)->Arg(100)->Arg(5000);

static void BM_Theorem1Window(benchmark::State& state) {
    const auto& t = table();
    long width = state.range(0);
    opart::RunOptions serial{1, false};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            opart::theorem1_check(0, 4522, 4522 + width - 1, t, kCtx, serial));
    }
    state.SetItemsProcessed(state.iterations() * width);
}
BENCHMARK(BM_Theorem1Window)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_LogConcavityWindow(benchmark::State& state) {
    const auto& t = table();
    long width = state.range(0);
    opart::RunOptions serial{1, false};
    for (auto _ : state) {
        benchmark::DoNotOptimize(opart::engel_logconcavity_check(2, 1 + width, t, serial));
    }
    state.SetItemsProcessed(state.iterations() * width);
}
BENCHMARK(BM_LogConcavityWindow)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_NAlpha(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(opart::n_alpha(mpq_class(1, 2)));
    }
}
BENCHMARK(BM_NAlpha);
