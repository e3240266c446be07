#include "hairsynth/refine.hpp"

#include "hairsynth/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hairsynth {

namespace {

double rgb_jump(const Image& img, PixelCoord a, PixelCoord b) noexcept {
    double jump = 0.0;
    for (int c = 0; c < 3; ++c) jump = std::max(jump, std::abs(img.channel(a.x, a.y, c) - img.channel(b.x, b.y, c)));
    return jump;
}

struct Crossing {
    PixelCoord step;
    double jump = -1.0;
};

void require_between(int v, int a, int b, const char* name) {
    if (v < std::min(a, b) || v > std::max(a, b)) {
        throw std::out_of_range(std::string(name) + " = " + std::to_string(v) + " is outside the anchor span [" +
                                std::to_string(std::min(a, b)) + ", " + std::to_string(std::max(a, b)) + "]");
    }
}

} // namespace

void validate(const RefineParams& params) {
    if (params.band_width < 1) {
        throw ValidationError("band_width", "must be >= 1, got " + std::to_string(params.band_width));
    }
    if (!(params.jump_threshold >= 0.0 && params.jump_threshold <= 1.0)) {
        throw ValidationError("jump_threshold", "must lie in [0,1], got " + std::to_string(params.jump_threshold));
    }
}

ChannelValues interp_vertical(const BoundaryPair& pair, int y) {
    const int y1 = pair.p1.y;
    const int y2 = pair.p2.y;
    if (y1 == y2) throw AxisDispatchError("anchors share y = " + std::to_string(y1) + "; use the horizontal form");
    require_between(y, y1, y2, "y");
    const double span = static_cast<double>(y1 - y2);
    const double w1 = static_cast<double>(y - y2) / span;
    const double w2 = static_cast<double>(y1 - y) / span;
    ChannelValues out{};
    for (int c = 0; c < kChannels; ++c) out[c] = w1 * pair.i1[c] + w2 * pair.i2[c];
    return out;
}

ChannelValues interp_horizontal(const BoundaryPair& pair, int x) {
    const int x1 = pair.p1.x;
    const int x2 = pair.p2.x;
    if (x1 == x2) throw AxisDispatchError("anchors share x = " + std::to_string(x1) + "; use the vertical form");
    require_between(x, x1, x2, "x");
    const double span = static_cast<double>(x2 - x1);
    const double w1 = static_cast<double>(x2 - x) / span;
    const double w2 = static_cast<double>(x - x1) / span;
    ChannelValues out{};
    for (int c = 0; c < kChannels; ++c) out[c] = w1 * pair.i1[c] + w2 * pair.i2[c];
    return out;
}

ChannelValues interpolate(const BoundaryPair& pair, PixelCoord at) {
    if (pair.p1.y == pair.p2.y) return interp_horizontal(pair, at.x);
    return interp_vertical(pair, at.y);
}

std::vector<BoundaryPair> find_boundary_pairs(const Image& img, const RegionMask& mask, const RefineParams& params) {
    validate(params);
    if (mask.width() != img.width() || mask.height() != img.height()) {
        throw DimensionMismatchError("refine: mask does not match image dimensions");
    }
    std::vector<BoundaryPair> pairs;
    auto outside = [&](PixelCoord p) { return img.contains(p.x, p.y) && !mask.contains(p.x, p.y); };

    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (!mask.contains(x, y)) continue;
            const PixelCoord b{x, y};
            Crossing vertical;
            Crossing horizontal;
            for (PixelCoord step : {PixelCoord{0, -1}, PixelCoord{0, 1}}) {
                const PixelCoord o{x + step.x, y + step.y};
                if (!outside(o)) continue;
                const double j = rgb_jump(img, b, o);
                if (j > vertical.jump) vertical = {step, j};
            }
            for (PixelCoord step : {PixelCoord{-1, 0}, PixelCoord{1, 0}}) {
                const PixelCoord o{x + step.x, y + step.y};
                if (!outside(o)) continue;
                const double j = rgb_jump(img, b, o);
                if (j > horizontal.jump) horizontal = {step, j};
            }
            if (vertical.jump < 0.0 && horizontal.jump < 0.0) continue;
            const Crossing chosen = vertical.jump >= horizontal.jump ? vertical : horizontal;
            if (!(chosen.jump > params.jump_threshold)) continue;

            int inward = 0;
            while (inward < params.band_width &&
                   mask.contains(x - (inward + 1) * chosen.step.x, y - (inward + 1) * chosen.step.y)) {
                ++inward;
            }
            if (inward == 0) continue;
            int outward = 0;
            while (outward < params.band_width &&
                   outside({x + (outward + 1) * chosen.step.x, y + (outward + 1) * chosen.step.y})) {
                ++outward;
            }
            BoundaryPair pair;
            pair.p1 = {x - inward * chosen.step.x, y - inward * chosen.step.y};
            pair.p2 = {x + outward * chosen.step.x, y + outward * chosen.step.y};
            pair.i1 = img.values(pair.p1.x, pair.p1.y);
            pair.i2 = img.values(pair.p2.x, pair.p2.y);
            pairs.push_back(pair);
        }
    }
    return pairs;
}

RefineResult refine_boundary_with_stats(const Image& img, const RegionMask& mask, const RefineParams& params) {
    const std::vector<BoundaryPair> pairs = find_boundary_pairs(img, mask, params);
    RefineResult result{img, pairs.size()};
    RegionMask claimed(img.width(), img.height());
    for (const BoundaryPair& pair : pairs) {
        const int sx = (pair.p2.x > pair.p1.x) - (pair.p2.x < pair.p1.x);
        const int sy = (pair.p2.y > pair.p1.y) - (pair.p2.y < pair.p1.y);
        for (PixelCoord p{pair.p1.x + sx, pair.p1.y + sy}; p != pair.p2; p = {p.x + sx, p.y + sy}) {
            if (claimed.contains(p.x, p.y)) continue;
            claimed.set(p.x, p.y);
            const ChannelValues v = interpolate(pair, p);
            for (int c = 0; c < 3; ++c) result.image.set_channel(p.x, p.y, c, v[c]);
        }
    }
    return result;
}

Image refine_boundary(const Image& img, const RegionMask& mask, const RefineParams& params) {
    return refine_boundary_with_stats(img, mask, params).image;
}

std::string format_pairs(const std::vector<BoundaryPair>& pairs) {
    std::string out;
    for (const BoundaryPair& p : pairs) {
        out += std::to_string(p.p1.x) + "," + std::to_string(p.p1.y) + "," + std::to_string(p.p2.x) + "," +
               std::to_string(p.p2.y) + "," + (p.axis() == PairAxis::vertical ? "v" : "h") + "\n";
    }
    return out;
}

} // namespace hairsynth
