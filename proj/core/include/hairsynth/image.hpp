#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hairsynth {

/// RGBA, straight (non-premultiplied) alpha, each component in [0,1].
struct Color {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
    double a = 1.0;

    Color clamped() const noexcept;
    bool operator==(const Color&) const = default;
};

/// Column `x` grows rightwards, row `y` grows downwards, origin top-left.
struct PixelCoord {
    int x = 0;
    int y = 0;
    bool operator==(const PixelCoord&) const = default;
};

using ChannelValues = std::array<double, 4>;

inline constexpr int kChannels = 4;

/// One flag per pixel, same dimensions as the image it selects from.
class RegionMask {
public:
    RegionMask() = default;
    RegionMask(int width, int height, bool value = false);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_ &&
               bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
    }
    void set(int x, int y, bool value = true);
    std::size_t count() const noexcept;
    bool empty() const noexcept { return count() == 0; }

    bool operator==(const RegionMask&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Row-major RGBA raster with real-valued samples. Every public mutator
/// clamps to [0,1], so the range invariant holds between calls.
class Image {
public:
    Image() = default;
    Image(int width, int height, Color fill = {0.0, 0.0, 0.0, 1.0});
    /// Takes `samples` (size width*height*4), clamping each value into [0,1].
    Image(int width, int height, std::vector<double> samples);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }
    bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    std::span<const double> samples() const noexcept { return samples_; }
    std::size_t index(int x, int y) const noexcept {
        return (static_cast<std::size_t>(y) * width_ + x) * kChannels;
    }

    double channel(int x, int y, int c) const noexcept { return samples_[index(x, y) + c]; }
    Color pixel(int x, int y) const noexcept;
    ChannelValues values(int x, int y) const noexcept;

    void set_channel(int x, int y, int c, double v) noexcept;
    void set_pixel(int x, int y, const Color& color) noexcept;
    /// Composites one straight-alpha color source-over onto the pixel.
    void blend_pixel(int x, int y, const Color& src) noexcept;

    bool operator==(const Image&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> samples_;
};

/// Source-over compositing of `src` onto `dst`. Pixels outside `region`
/// keep their `dst` value.
Image composite_over(const Image& dst, const Image& src, const RegionMask* region = nullptr);

/// Per-channel arithmetic mean over `region` (or every pixel).
ChannelValues mean_intensity(const Image& img, const RegionMask* region = nullptr);

/// FNV-1a 64 over the dimensions and the 8-bit quantized RGBA samples.
std::uint64_t image_checksum(const Image& img);

/// round(v*255) with halves rounded up, clamped to [0,255].
std::uint8_t quantize_channel(double v) noexcept;

} // namespace hairsynth
