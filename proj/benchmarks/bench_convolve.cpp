#include "bench_input.hpp"

#include <hairsynth/filter.hpp>
#include <hairsynth/kernel.hpp>

#include <benchmark/benchmark.h>

using namespace hairsynth;

namespace {

void BM_ConvolveNaive(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    const Image img = bench_image(256, 256, 1);
    const Kernel k = make_streak_kernel(bench_streak(size));
    for (auto _ : state) benchmark::DoNotOptimize(convolve_naive(img, k));
    state.SetItemsProcessed(state.iterations() * 256 * 256);
}

void BM_ConvolveFast(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    const int threads = static_cast<int>(state.range(1));
    const Image img = bench_image(512, 512, 1);
    const Kernel k = make_streak_kernel(bench_streak(size));
    state.counters["taps"] = static_cast<double>(k.nonzero_count());
    for (auto _ : state) benchmark::DoNotOptimize(convolve_fast(img, k, nullptr, {threads}));
    state.SetItemsProcessed(state.iterations() * 512 * 512);
}

void BM_ConvolveFastMasked(benchmark::State& state) {
    const Image img = bench_image(512, 512, 2);
    const Kernel k = make_streak_kernel(bench_streak(31));
    RegionMask mask(512, 512);
    for (int y = 128; y < 384; ++y)
        for (int x = 128; x < 384; ++x) mask.set(x, y);
    for (auto _ : state) benchmark::DoNotOptimize(convolve_fast(img, k, &mask));
    state.SetItemsProcessed(state.iterations() * 256 * 256);
}

} // namespace

BENCHMARK(BM_ConvolveNaive)->Arg(19)->Arg(31)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolveFast)->Args({19, 1})->Args({31, 1})->Args({31, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolveFastMasked)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
