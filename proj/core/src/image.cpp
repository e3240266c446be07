#include "hairsynth/image.hpp"

#include "hairsynth/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hairsynth {

namespace {

double clamp01(double v) noexcept {
    // NaN maps to 0 so it can never leak into an encoded byte.
    if (!(v > 0.0)) return 0.0;
    return v < 1.0 ? v : 1.0;
}

void require_positive_dims(int width, int height) {
    if (width <= 0 || height <= 0) {
        throw ValidationError("", "image dimensions must be positive, got " + std::to_string(width) +
                                      "x" + std::to_string(height));
    }
}

} // namespace

Color Color::clamped() const noexcept { return {clamp01(r), clamp01(g), clamp01(b), clamp01(a)}; }

RegionMask::RegionMask(int width, int height, bool value)
    : width_(width), height_(height),
      bits_(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), value ? 1 : 0) {}

void RegionMask::set(int x, int y, bool value) {
    if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
    bits_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
}

std::size_t RegionMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Image::Image(int width, int height, Color fill) : width_(width), height_(height) {
    require_positive_dims(width, height);
    const Color c = fill.clamped();
    samples_.resize(pixel_count() * kChannels);
    for (std::size_t i = 0; i < samples_.size(); i += kChannels) {
        samples_[i] = c.r;
        samples_[i + 1] = c.g;
        samples_[i + 2] = c.b;
        samples_[i + 3] = c.a;
    }
}

Image::Image(int width, int height, std::vector<double> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    require_positive_dims(width, height);
    if (samples_.size() != pixel_count() * kChannels) {
        throw DimensionMismatchError("sample count " + std::to_string(samples_.size()) +
                                     " does not match " + std::to_string(width) + "x" +
                                     std::to_string(height) + " RGBA");
    }
    for (double& v : samples_) v = clamp01(v);
}

Color Image::pixel(int x, int y) const noexcept {
    const std::size_t i = index(x, y);
    return {samples_[i], samples_[i + 1], samples_[i + 2], samples_[i + 3]};
}

ChannelValues Image::values(int x, int y) const noexcept {
    const std::size_t i = index(x, y);
    return {samples_[i], samples_[i + 1], samples_[i + 2], samples_[i + 3]};
}

void Image::set_channel(int x, int y, int c, double v) noexcept { samples_[index(x, y) + c] = clamp01(v); }

void Image::set_pixel(int x, int y, const Color& color) noexcept {
    const Color c = color.clamped();
    const std::size_t i = index(x, y);
    samples_[i] = c.r;
    samples_[i + 1] = c.g;
    samples_[i + 2] = c.b;
    samples_[i + 3] = c.a;
}

void Image::blend_pixel(int x, int y, const Color& src) noexcept {
    const Color s = src.clamped();
    if (s.a <= 0.0) return;
    const std::size_t i = index(x, y);
    if (s.a >= 1.0) {
        samples_[i] = s.r;
        samples_[i + 1] = s.g;
        samples_[i + 2] = s.b;
        samples_[i + 3] = 1.0;
        return;
    }
    const double da = samples_[i + 3];
    const double dst_weight = da * (1.0 - s.a);
    const double out_a = s.a + dst_weight;
    for (int c = 0; c < 3; ++c) {
        const double sc = c == 0 ? s.r : (c == 1 ? s.g : s.b);
        samples_[i + c] = clamp01((sc * s.a + samples_[i + c] * dst_weight) / out_a);
    }
    samples_[i + 3] = clamp01(out_a);
}

Image composite_over(const Image& dst, const Image& src, const RegionMask* region) {
    if (dst.width() != src.width() || dst.height() != src.height()) {
        throw DimensionMismatchError("composite_over: destination is " + std::to_string(dst.width()) + "x" +
                                     std::to_string(dst.height()) + ", source is " +
                                     std::to_string(src.width()) + "x" + std::to_string(src.height()));
    }
    if (region && (region->width() != dst.width() || region->height() != dst.height())) {
        throw DimensionMismatchError("composite_over: region mask does not match image dimensions");
    }
    Image out = dst;
    for (int y = 0; y < dst.height(); ++y) {
        for (int x = 0; x < dst.width(); ++x) {
            if (region && !region->contains(x, y)) continue;
            out.blend_pixel(x, y, src.pixel(x, y));
        }
    }
    return out;
}

ChannelValues mean_intensity(const Image& img, const RegionMask* region) {
    if (region && (region->width() != img.width() || region->height() != img.height())) {
        throw DimensionMismatchError("mean_intensity: region mask does not match image dimensions");
    }
    ChannelValues sum{};
    std::size_t n = 0;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (region && !region->contains(x, y)) continue;
            const std::size_t i = img.index(x, y);
            for (int c = 0; c < kChannels; ++c) sum[c] += img.samples()[i + c];
            ++n;
        }
    }
    if (n == 0) throw ValidationError("", "mean_intensity: region is empty");
    for (double& s : sum) s /= static_cast<double>(n);
    return sum;
}

std::uint8_t quantize_channel(double v) noexcept {
    const double scaled = std::floor(clamp01(v) * 255.0 + 0.5);
    return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

std::uint64_t image_checksum(const Image& img) {
    std::uint64_t h = 14695981039346656037ULL;
    auto feed = [&h](std::uint8_t byte) {
        h ^= byte;
        h *= 1099511628211ULL;
    };
    for (int dim : {img.width(), img.height()}) {
        for (int shift = 0; shift < 32; shift += 8) feed(static_cast<std::uint8_t>((dim >> shift) & 0xff));
    }
    for (double v : img.samples()) feed(quantize_channel(v));
    return h;
}

} // namespace hairsynth
