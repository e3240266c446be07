#pragma once

#include "hairsynth/image.hpp"
#include "hairsynth/kernel.hpp"

#include <vector>

namespace hairsynth {

/// A nonzero kernel cell as a source offset relative to the destination.
struct Tap {
    int dx;
    int dy;
    double weight;
};

/// Nonzero cells in row-major kernel order.
std::vector<Tap> nonzero_taps(const Kernel& kernel);

struct FilterOptions {
    /// Worker threads for convolve_fast; values < 1 mean 1.
    int threads = 1;
};

/// Reference correlation: every kernel cell, clamp-to-edge reads from the
/// unmodified source, RGB only (alpha copied), result clamped to [0,1].
/// Pixels outside `mask` are copied unchanged.
Image convolve_naive(const Image& img, const Kernel& kernel, const RegionMask* mask = nullptr);

/// Same contract as convolve_naive, iterating only nonzero taps and skipping
/// the clamp on interior pixels. Rows are split across `options.threads`;
/// each pixel is computed identically regardless of the split.
Image convolve_fast(const Image& img, const Kernel& kernel, const RegionMask* mask = nullptr,
                    FilterOptions options = {});

/// Convolves a constant image and returns the resulting constant. Throws
/// ValidationError if `img` is not constant.
ChannelValues brightness_response(const Image& img, const Kernel& kernel);

} // namespace hairsynth
