#include "fixtures.hpp"

#include <hairsynth/codec.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fixtures {

using namespace hairsynth;

std::filesystem::path data_dir() { return HAIRSYNTH_TEST_DATA_DIR; }

std::string read_text(const std::filesystem::path& path) {
    const auto bytes = read_file_bytes(path);
    return {bytes.begin(), bytes.end()};
}

Image random_image(int width, int height, SplitMix64& rng) {
    std::vector<double> samples(static_cast<std::size_t>(width) * height * 4);
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = (i % 4 == 3) ? 1.0 : rng.uniform();
    return Image(width, height, std::move(samples));
}

Image gray_noise(int width, int height, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Image img(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double v = rng.uniform();
            img.set_pixel(x, y, {v, v, v, 1.0});
        }
    }
    return img;
}

Kernel random_kernel(int size, double fill, SplitMix64& rng) {
    std::vector<double> coeffs(static_cast<std::size_t>(size) * size, 0.0);
    double total = 0.0;
    for (double& c : coeffs) {
        if (rng.uniform() < fill) {
            c = rng.uniform();
            total += c;
        }
    }
    if (total == 0.0) {
        coeffs[coeffs.size() / 2] = 1.0;
        total = 1.0;
    }
    for (double& c : coeffs) c /= total;
    return Kernel(size, std::move(coeffs));
}

RegionMask random_mask(int width, int height, double fill, SplitMix64& rng) {
    RegionMask mask(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) mask.set(x, y, rng.uniform() < fill);
    }
    return mask;
}

Polygon star_polygon(double cx, double cy, double r_min, double r_max, int n, SplitMix64& rng) {
    std::vector<double> angles;
    for (int i = 0; i < n; ++i) angles.push_back((i + 0.1 + 0.8 * rng.uniform()) * 2.0 * std::numbers::pi / n);
    Polygon polygon;
    for (double a : angles) {
        const double r = rng.uniform(r_min, r_max);
        polygon.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
    }
    return polygon;
}

Image synthetic_portrait(int width, int height) {
    Image img(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double u = static_cast<double>(x) / width;
            const double v = static_cast<double>(y) / height;
            const double dx = u - 0.5;
            const double dy = v - 0.55;
            const double face = std::exp(-(dx * dx / 0.06 + dy * dy / 0.12));
            const double texture = 0.03 * std::sin(x / 7.3) * std::cos(y / 5.1);
            const double r = 0.55 + 0.35 * face + texture;
            const double g = 0.50 + 0.22 * face + texture;
            const double b = 0.52 + 0.10 * face + texture;
            img.set_pixel(x, y, {r, g, b, 1.0});
        }
    }
    return img;
}

SceneSpec golden_scene() { return parse_scene(read_text(data_dir() / "golden_scene.json")); }

std::vector<double> red_channel(const Image& img) {
    std::vector<double> out(img.pixel_count());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) out[static_cast<std::size_t>(y) * img.width() + x] = img.channel(x, y, 0);
    }
    return out;
}

} // namespace fixtures
