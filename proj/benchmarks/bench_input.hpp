#pragma once

#include <hairsynth/image.hpp>
#include <hairsynth/kernel.hpp>
#include <hairsynth/random.hpp>

#include <vector>

inline hairsynth::Image bench_image(int width, int height, std::uint64_t seed) {
    hairsynth::SplitMix64 rng(seed);
    std::vector<double> samples(static_cast<std::size_t>(width) * height * 4);
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = i % 4 == 3 ? 1.0 : rng.uniform();
    return hairsynth::Image(width, height, std::move(samples));
}

inline hairsynth::StreakKernelParams bench_streak(int size) {
    return {size, 30.0, 0.05, 1.5, size / 3.0, 1.0};
}
