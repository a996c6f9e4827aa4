#include <benchmark/benchmark.h>

#include "qltc/oracle.h"
#include "qltc/zoo.h"

using namespace qltc;

static void BM_BruteSoundnessRepetition(benchmark::State &state) {
    BitMatrix h = repetition_pcm(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_soundness(h));
    }
}
BENCHMARK(BM_BruteSoundnessRepetition)->DenseRange(8, 20, 4);

static void BM_QuantumSoundnessSurface(benchmark::State &state) {
    CssCode c = surface_code(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(quantum_soundness(c));
    }
}
BENCHMARK(BM_QuantumSoundnessSurface)->DenseRange(3, 4);

static void BM_BruteDistanceToric(benchmark::State &state) {
    CssCode c = toric_code(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_distance(c));
    }
}
BENCHMARK(BM_BruteDistanceToric)->DenseRange(2, 4);
