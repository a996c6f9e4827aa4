#include <benchmark/benchmark.h>

#include <random>

#include "qltc/gf2.h"

using namespace qltc;

namespace {

BitMatrix random_matrix(size_t rows, size_t cols, uint64_t seed) {
    std::mt19937_64 rng(seed);
    BitMatrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < cols; ++c) {
            if (rng() & 1) {
                m.set(r, c);
            }
        }
    }
    return m;
}

}  // namespace

static void BM_RankKernel(benchmark::State &state) {
    size_t n = state.range(0);
    BitMatrix m = random_matrix(n / 2, n, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rank_kernel(m));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RankKernel)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

static void BM_Matmul(benchmark::State &state) {
    size_t n = state.range(0);
    BitMatrix a = random_matrix(n, n, 2), b = random_matrix(n, n, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matmul(a, b));
    }
}
BENCHMARK(BM_Matmul)->RangeMultiplier(2)->Range(64, 1024);

static void BM_RowSpaceEqual(benchmark::State &state) {
    BitMatrix a = random_matrix(300, 600, 4);
    BitMatrix b = a;
    BitVector sum = a.row(0);
    sum ^= a.row(1);
    b.append_row(sum);
    for (auto _ : state) {
        benchmark::DoNotOptimize(row_space_equal(a, b));
    }
}
BENCHMARK(BM_RowSpaceEqual);
