#include <benchmark/benchmark.h>

#include "qltc/balance.h"
#include "qltc/soundness_amp.h"
#include "qltc/weight_reduction.h"
#include "qltc/zoo.h"

using namespace qltc;

static void BM_Copying(benchmark::State &state) {
    CssCode c = surface_code(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(copying(c));
    }
}
BENCHMARK(BM_Copying)->DenseRange(3, 9, 3);

static void BM_Cone(benchmark::State &state) {
    CssCode c = surface_code(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cone(c));
    }
}
BENCHMARK(BM_Cone)->DenseRange(3, 9, 3);

static void BM_DoubleBalance(benchmark::State &state) {
    CssCode c = toric_code(state.range(0));
    ClassicalCode r(repetition_pcm(3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(double_distance_balance(c, r));
    }
}
BENCHMARK(BM_DoubleBalance)->DenseRange(2, 6, 2);

static void BM_WeightReduceFull(benchmark::State &state) {
    CssCode c = surface_code(3);
    WeightReductionConfig cfg;
    cfg.measure = MeasureOptions{false, false, 24};
    for (auto _ : state) {
        benchmark::DoNotOptimize(weight_reduce_full(c, cfg));
    }
}
BENCHMARK(BM_WeightReduceFull)->Unit(benchmark::kMillisecond);

static void BM_SampleLosslessExpander(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_lossless_expander(500, 500, 0.5, 1));
    }
}
BENCHMARK(BM_SampleLosslessExpander)->Unit(benchmark::kMillisecond);
