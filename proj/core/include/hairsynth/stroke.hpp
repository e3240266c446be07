#pragma once

#include "hairsynth/geometry.hpp"
#include "hairsynth/image.hpp"
#include "hairsynth/kernel.hpp"
#include "hairsynth/refine.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hairsynth {

/// A single drawn hair: a polyline spine whose width tapers linearly (by arc
/// length) from base_width at the root to tip_width at the end.
struct HairStroke {
    std::vector<Point> spine;
    double base_width = 1.0;
    double tip_width = 0.25;
    Color color{};
    double opacity = 1.0;

    bool operator==(const HairStroke&) const = default;
};

struct Range {
    double min = 0.0;
    double max = 0.0;
    bool operator==(const Range&) const = default;
};

/// Statistical controls for a population of strokes.
struct StrokeParams {
    double density = 5.0; // strokes per 1000 px^2
    Range length{20.0, 40.0};
    Range width{1.0, 2.0};
    Color color_base{0.25, 0.18, 0.12, 1.0};
    double color_jitter = 0.05;
    double waviness_amp = 0.0;  // px
    double waviness_freq = 0.0; // cycles per 100 px
    double direction_deg = 90.0;
    double spread_deg = 5.0;
    int segments_per_stroke = 12;

    bool operator==(const StrokeParams&) const = default;
};

/// tip_width / base_width for generated strokes.
inline constexpr double kTipWidthRatio = 0.25;

/// A user-authored hair region and everything needed to process it.
struct HairPatch {
    Polygon polygon;
    StrokeParams stroke_params;
    KernelSpec kernel_params = StreakKernelParams{};
    RefineParams refine_params;

    bool operator==(const HairPatch&) const = default;
};

void validate(const StrokeParams& params);

/// round(density * area / 1000).
std::size_t expected_stroke_count(const HairPatch& patch);

/// Deterministic for a fixed (patch, seed). Roots come from a jittered grid
/// over the polygon's bounding box (rejecting points outside the polygon);
/// each stroke's own attributes come from a substream keyed by its index.
/// Spines are cut where they first leave the polygon.
std::vector<HairStroke> generate_strokes(const HairPatch& patch, std::uint64_t seed);

/// Draws `stroke` into `img` in place.
void draw_stroke(Image& img, const HairStroke& stroke);

/// Antialiased variable-width polyline, composited source-over.
Image rasterize_stroke(const Image& img, const HairStroke& stroke);

struct DrawResult {
    Image image;
    std::size_t stroke_count = 0;
};

DrawResult draw_patch_with_stats(const Image& img, const HairPatch& patch, std::uint64_t seed);

/// generate_strokes followed by rasterizing each stroke in generation order.
Image draw_patch(const Image& img, const HairPatch& patch, std::uint64_t seed);

/// JSON array, one object per stroke; byte-stable for equal inputs.
std::string serialize_strokes(const std::vector<HairStroke>& strokes);

} // namespace hairsynth
