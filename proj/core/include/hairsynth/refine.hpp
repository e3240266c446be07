#pragma once

#include "hairsynth/image.hpp"

#include <string>
#include <vector>

namespace hairsynth {

struct RefineParams {
    /// Anchor distance on each side of the boundary pixel.
    int band_width = 3;
    /// Minimum max-channel jump across the boundary that triggers a fill.
    double jump_threshold = 0.1;

    bool operator==(const RefineParams&) const = default;
};

void validate(const RefineParams& params);

enum class PairAxis {
    vertical,   // p1, p2 share a column; filled with the y-form
    horizontal, // p1, p2 share a row; filled with the x-form
};

/// Two anchors on a common row or column and their intensities.
struct BoundaryPair {
    PixelCoord p1;
    PixelCoord p2;
    ChannelValues i1{};
    ChannelValues i2{};

    PairAxis axis() const noexcept { return p1.y == p2.y ? PairAxis::horizontal : PairAxis::vertical; }
    bool operator==(const BoundaryPair&) const = default;
};

/// I = (y - y2)/(y1 - y2) * I1 + (y1 - y)/(y1 - y2) * I2, per channel.
/// Throws AxisDispatchError when y1 == y2 and std::out_of_range when `y`
/// is not between the anchors.
ChannelValues interp_vertical(const BoundaryPair& pair, int y);

/// I = (x2 - x)/(x2 - x1) * I1 + (x - x1)/(x2 - x1) * I2, per channel.
ChannelValues interp_horizontal(const BoundaryPair& pair, int x);

/// Chooses the horizontal form exactly when the anchors share a row.
ChannelValues interpolate(const BoundaryPair& pair, PixelCoord at);

/// Scans mask boundary pixels in row-major order. Each boundary pixel b
/// picks the crossing axis of its outside 4-neighbor o (the larger jump wins
/// when both axes qualify, ties go vertical), then places p1 up to
/// band_width pixels into the mask and p2 up to band_width pixels out of it.
/// A pair is emitted when the max-channel jump |I(b) - I(o)| exceeds
/// jump_threshold.
std::vector<BoundaryPair> find_boundary_pairs(const Image& img, const RegionMask& mask, const RefineParams& params);

struct RefineResult {
    Image image;
    std::size_t pairs_emitted = 0;
};

/// Overwrites RGB of every pixel strictly between the anchors of each emitted
/// pair with the linear interpolation of the anchors. A pixel already filled
/// by an earlier pair is left alone.
RefineResult refine_boundary_with_stats(const Image& img, const RegionMask& mask, const RefineParams& params);

Image refine_boundary(const Image& img, const RegionMask& mask, const RefineParams& params);

/// One "x1,y1,x2,y2,axis" line per pair, axis being 'v' or 'h'.
std::string format_pairs(const std::vector<BoundaryPair>& pairs);

} // namespace hairsynth
