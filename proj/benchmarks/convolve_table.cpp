// Plain-text comparison of the naive and tap-list convolution paths.
// Usage: convolve_table [width] [height]

#include "bench_input.hpp"

#include <hairsynth/filter.hpp>
#include <hairsynth/kernel.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>

using namespace hairsynth;

namespace {

template <typename F>
double best_seconds(int reps, F&& f) {
    double best = 1e30;
    for (int i = 0; i < reps; ++i) {
        const auto t = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    const int width = argc > 1 ? std::atoi(argv[1]) : 512;
    const int height = argc > 2 ? std::atoi(argv[2]) : 512;
    if (width < 1 || height < 1) {
        std::fprintf(stderr, "usage: convolve_table [width] [height]\n");
        return 1;
    }
    const Image img = bench_image(width, height, 7);
    const double mp = static_cast<double>(width) * height / 1e6;

    std::printf("%-6s %-6s %-12s %-12s %-8s\n", "size", "taps", "naive MP/s", "fast MP/s", "speedup");
    for (int size : {3, 9, 19, 31}) {
        const Kernel k = make_streak_kernel(bench_streak(size));
        const double naive = best_seconds(1, [&] { (void)convolve_naive(img, k); });
        const double fast = best_seconds(3, [&] { (void)convolve_fast(img, k); });
        std::printf("%-6d %-6zu %-12.2f %-12.2f %-8.1f\n", size, k.nonzero_count(), mp / naive, mp / fast,
                    naive / fast);
    }
    return 0;
}
