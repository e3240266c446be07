#include "hairsynth/stroke.hpp"

#include "hairsynth/error.hpp"
#include "hairsynth/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hairsynth {

namespace {

constexpr std::uint64_t kRootStream = 0x524f4f54;   // "ROOT"
constexpr std::uint64_t kStrokeStream = 0x5354524b; // "STRK"
constexpr int kGridAttempts = 8;
constexpr std::size_t kMaxGridCells = std::size_t{1} << 24;

void require_range(const Range& r, const char* field, bool strictly_positive) {
    if (!std::isfinite(r.min) || !std::isfinite(r.max)) throw ValidationError(field, "range must be finite");
    if (r.min > r.max) throw ValidationError(field, "min must not exceed max");
    if (strictly_positive ? !(r.min > 0.0) : !(r.min >= 0.0)) {
        throw ValidationError(field, strictly_positive ? "values must be > 0" : "values must be >= 0");
    }
}

void require_nonnegative(double v, const char* field) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError(field, "must be a finite value >= 0");
}

std::vector<Point> sample_roots(const Polygon& polygon, double area, std::size_t count, SplitMix64& rng) {
    std::vector<Point> candidates;
    if (count == 0) return candidates;
    const Bounds b = polygon_bounds(polygon);
    const double bw = b.max_x - b.min_x;
    const double bh = b.max_y - b.min_y;
    double cell = std::sqrt(area / static_cast<double>(count));
    for (int attempt = 0; attempt < kGridAttempts; ++attempt) {
        const auto nx = static_cast<std::size_t>(std::max(1.0, std::ceil(bw / cell)));
        const auto ny = static_cast<std::size_t>(std::max(1.0, std::ceil(bh / cell)));
        if (nx * ny > kMaxGridCells) break;
        candidates.clear();
        for (std::size_t j = 0; j < ny; ++j) {
            for (std::size_t i = 0; i < nx; ++i) {
                const Point p{b.min_x + (static_cast<double>(i) + rng.uniform()) * bw / static_cast<double>(nx),
                              b.min_y + (static_cast<double>(j) + rng.uniform()) * bh / static_cast<double>(ny)};
                if (point_in_polygon(polygon, p)) candidates.push_back(p);
            }
        }
        if (candidates.size() >= count) break;
        cell *= 0.75;
    }
    // Thin slivers can defeat the grid; top up with plain rejection sampling.
    std::size_t tries = 0;
    while (candidates.size() < count) {
        if (++tries > 100 * count + 1000000) throw GeometryError("could not place stroke roots inside polygon");
        const Point p{rng.uniform(b.min_x, b.max_x), rng.uniform(b.min_y, b.max_y)};
        if (point_in_polygon(polygon, p)) candidates.push_back(p);
    }
    if (candidates.size() == count) return candidates;

    // Keep a random subset, preserving grid order.
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(order.size() - i));
        std::swap(order[i], order[j]);
    }
    order.resize(count);
    std::sort(order.begin(), order.end());
    std::vector<Point> roots;
    roots.reserve(count);
    for (std::size_t i : order) roots.push_back(candidates[i]);
    return roots;
}

std::vector<Point> confine_to_polygon(const Polygon& polygon, const std::vector<Point>& spine) {
    std::vector<Point> out{spine.front()};
    for (std::size_t i = 0; i + 1 < spine.size(); ++i) {
        const double t = first_boundary_crossing(polygon, spine[i], spine[i + 1]);
        if (t > 0.0) {
            out.push_back(spine[i] + t * (spine[i + 1] - spine[i]));
            return out;
        }
        out.push_back(spine[i + 1]);
    }
    return out;
}

double box_overlap(double distance, double half_width) noexcept {
    const double hi = std::min(distance + 0.5, half_width);
    const double lo = std::max(distance - 0.5, -half_width);
    return std::clamp(hi - lo, 0.0, 1.0);
}

} // namespace

void validate(const StrokeParams& p) {
    require_nonnegative(p.density, "density");
    require_range(p.length, "length", false);
    require_range(p.width, "width", true);
    const Color& c = p.color_base;
    for (double v : {c.r, c.g, c.b, c.a}) {
        if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("color", "components must lie in [0,1]");
    }
    if (!(p.color_jitter >= 0.0 && p.color_jitter <= 1.0)) {
        throw ValidationError("color_jitter", "must lie in [0,1]");
    }
    require_nonnegative(p.waviness_amp, "waviness_amp");
    require_nonnegative(p.waviness_freq, "waviness_freq");
    if (!std::isfinite(p.direction_deg)) throw ValidationError("direction_deg", "must be finite");
    require_nonnegative(p.spread_deg, "spread_deg");
    if (p.segments_per_stroke < 2) throw ValidationError("segments_per_stroke", "must be >= 2");
}

std::size_t expected_stroke_count(const HairPatch& patch) {
    const double area = polygon_area(patch.polygon);
    return static_cast<std::size_t>(std::llround(patch.stroke_params.density * area / 1000.0));
}

std::vector<HairStroke> generate_strokes(const HairPatch& patch, std::uint64_t seed) {
    require_valid_polygon(patch.polygon);
    const StrokeParams& p = patch.stroke_params;
    validate(p);
    const double area = polygon_area(patch.polygon);
    const std::size_t count = expected_stroke_count(patch);

    SplitMix64 root_rng(mix_seed(seed, kRootStream));
    const std::vector<Point> roots = sample_roots(patch.polygon, area, count, root_rng);

    const std::uint64_t stroke_seed = mix_seed(seed, kStrokeStream);
    std::vector<HairStroke> strokes;
    strokes.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        SplitMix64 rng(mix_seed(stroke_seed, k));
        const double angle = (p.direction_deg + rng.uniform(-p.spread_deg, p.spread_deg)) * std::numbers::pi / 180.0;
        const double length = rng.uniform(p.length.min, p.length.max);
        const double width = rng.uniform(p.width.min, p.width.max);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double r = p.color_base.r + rng.uniform(-p.color_jitter, p.color_jitter);
        const double g = p.color_base.g + rng.uniform(-p.color_jitter, p.color_jitter);
        const double b = p.color_base.b + rng.uniform(-p.color_jitter, p.color_jitter);

        const Point along{std::cos(angle), std::sin(angle)};
        const Point lateral{-along.y, along.x};
        const double omega = 2.0 * std::numbers::pi * p.waviness_freq / 100.0;
        std::vector<Point> spine;
        spine.reserve(p.segments_per_stroke + 1);
        for (int i = 0; i <= p.segments_per_stroke; ++i) {
            const double s = length * i / p.segments_per_stroke;
            const double offset = p.waviness_amp * (std::sin(omega * s + phase) - std::sin(phase));
            spine.push_back(roots[k] + s * along + offset * lateral);
        }

        HairStroke stroke;
        stroke.spine = confine_to_polygon(patch.polygon, spine);
        stroke.base_width = width;
        stroke.tip_width = width * kTipWidthRatio;
        stroke.color = Color{r, g, b, p.color_base.a}.clamped();
        stroke.opacity = 1.0;
        strokes.push_back(std::move(stroke));
    }
    return strokes;
}

void draw_stroke(Image& img, const HairStroke& stroke) {
    const double alpha_scale = stroke.opacity * stroke.color.a;
    if (!(alpha_scale > 0.0) || stroke.spine.empty()) return;
    const std::vector<Point>& spine = stroke.spine;

    std::vector<double> arc(spine.size(), 0.0);
    for (std::size_t i = 1; i < spine.size(); ++i) {
        arc[i] = arc[i - 1] + std::hypot(spine[i].x - spine[i - 1].x, spine[i].y - spine[i - 1].y);
    }
    const double total = arc.back();
    auto half_width_at = [&](double s) {
        const double f = total > 0.0 ? s / total : 0.0;
        return 0.5 * (stroke.base_width + (stroke.tip_width - stroke.base_width) * f);
    };
    const double reach = 0.5 * std::max(stroke.base_width, stroke.tip_width) + 1.0;

    Bounds box = polygon_bounds(spine);
    const int x0 = std::max(0, static_cast<int>(std::floor(box.min_x - reach)));
    const int y0 = std::max(0, static_cast<int>(std::floor(box.min_y - reach)));
    const int x1 = std::min(img.width() - 1, static_cast<int>(std::ceil(box.max_x + reach)));
    const int y1 = std::min(img.height() - 1, static_cast<int>(std::ceil(box.max_y + reach)));
    if (x0 > x1 || y0 > y1) return;

    const int bw = x1 - x0 + 1;
    std::vector<double> coverage(static_cast<std::size_t>(bw) * (y1 - y0 + 1), 0.0);
    const std::size_t segments = spine.size() == 1 ? 1 : spine.size() - 1;
    for (std::size_t i = 0; i < segments; ++i) {
        const Point a = spine[i];
        const Point b = spine.size() == 1 ? spine[0] : spine[i + 1];
        const double seg_len = spine.size() == 1 ? 0.0 : arc[i + 1] - arc[i];
        const int sx0 = std::max(x0, static_cast<int>(std::floor(std::min(a.x, b.x) - reach)));
        const int sy0 = std::max(y0, static_cast<int>(std::floor(std::min(a.y, b.y) - reach)));
        const int sx1 = std::min(x1, static_cast<int>(std::ceil(std::max(a.x, b.x) + reach)));
        const int sy1 = std::min(y1, static_cast<int>(std::ceil(std::max(a.y, b.y) + reach)));
        for (int y = sy0; y <= sy1; ++y) {
            for (int x = sx0; x <= sx1; ++x) {
                double t = 0.0;
                const double d = distance_to_segment({x + 0.5, y + 0.5}, a, b, &t);
                const double cov = box_overlap(d, half_width_at(arc[i] + t * seg_len));
                double& slot = coverage[static_cast<std::size_t>(y - y0) * bw + (x - x0)];
                slot = std::max(slot, cov);
            }
        }
    }
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const double cov = coverage[static_cast<std::size_t>(y - y0) * bw + (x - x0)];
            if (cov <= 0.0) continue;
            img.blend_pixel(x, y, {stroke.color.r, stroke.color.g, stroke.color.b, cov * alpha_scale});
        }
    }
}

Image rasterize_stroke(const Image& img, const HairStroke& stroke) {
    Image out = img;
    draw_stroke(out, stroke);
    return out;
}

DrawResult draw_patch_with_stats(const Image& img, const HairPatch& patch, std::uint64_t seed) {
    const std::vector<HairStroke> strokes = generate_strokes(patch, seed);
    DrawResult result{img, strokes.size()};
    for (const HairStroke& s : strokes) draw_stroke(result.image, s);
    return result;
}

Image draw_patch(const Image& img, const HairPatch& patch, std::uint64_t seed) {
    return draw_patch_with_stats(img, patch, seed).image;
}

std::string serialize_strokes(const std::vector<HairStroke>& strokes) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const HairStroke& s : strokes) {
        nlohmann::ordered_json spine = nlohmann::ordered_json::array();
        for (const Point& p : s.spine) spine.push_back({p.x, p.y});
        out.push_back({{"spine", std::move(spine)},
                       {"base_width", s.base_width},
                       {"tip_width", s.tip_width},
                       {"color", {s.color.r, s.color.g, s.color.b, s.color.a}},
                       {"opacity", s.opacity}});
    }
    return out.dump();
}

} // namespace hairsynth
