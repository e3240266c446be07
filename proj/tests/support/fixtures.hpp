#pragma once

#include <hairsynth/geometry.hpp>
#include <hairsynth/image.hpp>
#include <hairsynth/kernel.hpp>
#include <hairsynth/random.hpp>
#include <hairsynth/scene.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace fixtures {

std::filesystem::path data_dir();
std::string read_text(const std::filesystem::path& path);

/// Uniform [0,1] RGB with opaque alpha.
hairsynth::Image random_image(int width, int height, hairsynth::SplitMix64& rng);

/// Gray white noise (R = G = B), opaque.
hairsynth::Image gray_noise(int width, int height, std::uint64_t seed);

/// Random nonnegative coefficients at roughly `fill` density, scaled to sum to 1.
hairsynth::Kernel random_kernel(int size, double fill, hairsynth::SplitMix64& rng);

hairsynth::RegionMask random_mask(int width, int height, double fill, hairsynth::SplitMix64& rng);

/// Star-shaped (hence simple) polygon with `n` vertices at sorted angles.
hairsynth::Polygon star_polygon(double cx, double cy, double r_min, double r_max, int n, hairsynth::SplitMix64& rng);

/// Deterministic 512x512-style skin/scalp backdrop used by the golden scene.
hairsynth::Image synthetic_portrait(int width, int height);

/// tests/data/golden_scene.json
hairsynth::SceneSpec golden_scene();

/// Single-channel view (red) of an image.
std::vector<double> red_channel(const hairsynth::Image& img);

} // namespace fixtures
