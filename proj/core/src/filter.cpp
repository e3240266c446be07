#include "hairsynth/filter.hpp"

#include "hairsynth/error.hpp"

#include <algorithm>
#include <string>
#include <thread>

namespace hairsynth {

namespace {

void check_mask(const Image& img, const RegionMask* mask) {
    if (mask && (mask->width() != img.width() || mask->height() != img.height())) {
        throw DimensionMismatchError("mask is " + std::to_string(mask->width()) + "x" +
                                     std::to_string(mask->height()) + " but image is " +
                                     std::to_string(img.width()) + "x" + std::to_string(img.height()));
    }
}

double clamp01(double v) noexcept { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

struct ResolvedTap {
    std::ptrdiff_t offset; // sample offset for interior pixels
    int dx;
    int dy;
    double weight;
};

void convolve_rows(const Image& img, const std::vector<ResolvedTap>& taps, int radius, const RegionMask* mask,
                   int row_begin, int row_end, std::vector<double>& out) {
    const int w = img.width();
    const int h = img.height();
    const double* src = img.samples().data();
    for (int y = row_begin; y < row_end; ++y) {
        const bool interior_row = y - radius >= 0 && y + radius < h;
        for (int x = 0; x < w; ++x) {
            if (mask && !mask->contains(x, y)) continue;
            const std::size_t dst = img.index(x, y);
            double acc_r = 0.0;
            double acc_g = 0.0;
            double acc_b = 0.0;
            if (interior_row && x - radius >= 0 && x + radius < w) {
                const double* base = src + dst;
                for (const ResolvedTap& t : taps) {
                    const double* s = base + t.offset;
                    acc_r += t.weight * s[0];
                    acc_g += t.weight * s[1];
                    acc_b += t.weight * s[2];
                }
            } else {
                for (const ResolvedTap& t : taps) {
                    const int sx = std::clamp(x + t.dx, 0, w - 1);
                    const int sy = std::clamp(y + t.dy, 0, h - 1);
                    const double* s = src + img.index(sx, sy);
                    acc_r += t.weight * s[0];
                    acc_g += t.weight * s[1];
                    acc_b += t.weight * s[2];
                }
            }
            out[dst] = clamp01(acc_r);
            out[dst + 1] = clamp01(acc_g);
            out[dst + 2] = clamp01(acc_b);
        }
    }
}

} // namespace

std::vector<Tap> nonzero_taps(const Kernel& kernel) {
    std::vector<Tap> taps;
    const int r = kernel.radius();
    for (int row = 0; row < kernel.size(); ++row) {
        for (int col = 0; col < kernel.size(); ++col) {
            const double w = kernel.at(row, col);
            if (w != 0.0) taps.push_back({col - r, row - r, w});
        }
    }
    return taps;
}

Image convolve_naive(const Image& img, const Kernel& kernel, const RegionMask* mask) {
    check_mask(img, mask);
    const int w = img.width();
    const int h = img.height();
    const int r = kernel.radius();
    std::vector<double> out(img.samples().begin(), img.samples().end());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (mask && !mask->contains(x, y)) continue;
            for (int c = 0; c < 3; ++c) {
                double acc = 0.0;
                for (int row = 0; row < kernel.size(); ++row) {
                    for (int col = 0; col < kernel.size(); ++col) {
                        const int sx = std::clamp(x + col - r, 0, w - 1);
                        const int sy = std::clamp(y + row - r, 0, h - 1);
                        acc += kernel.at(row, col) * img.channel(sx, sy, c);
                    }
                }
                out[img.index(x, y) + c] = clamp01(acc);
            }
        }
    }
    return Image(w, h, std::move(out));
}

Image convolve_fast(const Image& img, const Kernel& kernel, const RegionMask* mask, FilterOptions options) {
    check_mask(img, mask);
    std::vector<double> out(img.samples().begin(), img.samples().end());
    if (mask && mask->empty()) return Image(img.width(), img.height(), std::move(out));

    std::vector<ResolvedTap> taps;
    for (const Tap& t : nonzero_taps(kernel)) {
        const std::ptrdiff_t offset = (static_cast<std::ptrdiff_t>(t.dy) * img.width() + t.dx) * kChannels;
        taps.push_back({offset, t.dx, t.dy, t.weight});
    }

    const int h = img.height();
    const int threads = std::clamp(options.threads, 1, h);
    if (threads == 1) {
        convolve_rows(img, taps, kernel.radius(), mask, 0, h, out);
    } else {
        // Workers write disjoint rows of `out`.
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (int i = 0; i < threads; ++i) {
            const int begin = h * i / threads;
            const int end = h * (i + 1) / threads;
            workers.emplace_back([&, begin, end] { convolve_rows(img, taps, kernel.radius(), mask, begin, end, out); });
        }
    }
    return Image(img.width(), img.height(), std::move(out));
}

ChannelValues brightness_response(const Image& img, const Kernel& kernel) {
    const ChannelValues first = img.values(0, 0);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (img.values(x, y) != first) {
                throw ValidationError("image", "brightness_response needs a constant image; pixel (" +
                                                   std::to_string(x) + "," + std::to_string(y) + ") differs");
            }
        }
    }
    // The corner pixel exercises the clamp-to-edge path.
    return convolve_fast(img, kernel).values(0, 0);
}

} // namespace hairsynth
