#include "hairsynth/geometry.hpp"

#include "hairsynth/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hairsynth {

namespace {

constexpr double kMinArea = 1e-9;

int orientation(Point a, Point b, Point c) noexcept {
    const double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
}

bool on_segment(Point a, Point b, Point p) noexcept {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_touch(Point a, Point b, Point c, Point d) noexcept {
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

double signed_area(const Polygon& polygon) noexcept {
    double twice = 0.0;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = polygon[i];
        const Point& q = polygon[(i + 1) % n];
        twice += p.x * q.y - q.x * p.y;
    }
    return 0.5 * twice;
}

} // namespace

double polygon_area(const Polygon& polygon) {
    if (polygon.size() < 3) {
        throw GeometryError("polygon needs at least 3 vertices, got " + std::to_string(polygon.size()));
    }
    const double area = std::abs(signed_area(polygon));
    if (!(area > kMinArea)) throw GeometryError("polygon is degenerate (zero area)");
    return area;
}

bool is_simple(const Polygon& polygon) {
    const std::size_t n = polygon.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (polygon[i] == polygon[j]) return false;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = polygon[i];
        const Point b = polygon[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point c = polygon[j];
            const Point d = polygon[(j + 1) % n];
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) {
                // Shared vertex is fine; a fold-back along the same line is not.
                const Point shared = j == i + 1 ? b : a;
                const Point other_first = j == i + 1 ? a : b;
                const Point other_second = j == i + 1 ? d : c;
                if (orientation(other_first, shared, other_second) == 0 &&
                    dot(other_first - shared, other_second - shared) > 0.0) {
                    return false;
                }
                continue;
            }
            if (segments_touch(a, b, c, d)) return false;
        }
    }
    return true;
}

void require_valid_polygon(const Polygon& polygon) {
    polygon_area(polygon);
    if (!is_simple(polygon)) throw GeometryError("polygon is self-intersecting");
}

bool point_in_polygon(const Polygon& polygon, Point p) noexcept {
    bool inside = false;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = polygon[i];
        const Point b = polygon[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside;
}

Bounds polygon_bounds(const Polygon& polygon) noexcept {
    Bounds b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point& p : polygon) {
        b.min_x = std::min(b.min_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_x = std::max(b.max_x, p.x);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

RegionMask rasterize_polygon(const Polygon& polygon, int width, int height) {
    require_valid_polygon(polygon);
    RegionMask mask(width, height);
    const Bounds bounds = polygon_bounds(polygon);
    const int y_begin = std::max(0, static_cast<int>(std::floor(bounds.min_y - 0.5)));
    const int y_end = std::min(height, static_cast<int>(std::ceil(bounds.max_y + 0.5)));
    std::vector<double> crossings;
    const std::size_t n = polygon.size();
    for (int y = y_begin; y < y_end; ++y) {
        const double yc = y + 0.5;
        crossings.clear();
        for (std::size_t i = 0; i < n; ++i) {
            const Point a = polygon[i];
            const Point b = polygon[(i + 1) % n];
            if ((a.y > yc) != (b.y > yc)) crossings.push_back(a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y));
        }
        std::sort(crossings.begin(), crossings.end());
        for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
            // Centers x+0.5 in [left, right) are inside.
            const double first = std::ceil(crossings[k] - 0.5);
            const double last = std::ceil(crossings[k + 1] - 0.5) - 1.0;
            const int x0 = static_cast<int>(std::max(first, 0.0));
            const int x1 = static_cast<int>(std::min(last, static_cast<double>(width - 1)));
            for (int x = x0; x <= x1; ++x) mask.set(x, y);
        }
    }
    return mask;
}

double distance_to_segment(Point p, Point a, Point b, double* t) noexcept {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    double s = 0.0;
    if (len2 > 0.0) s = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    if (t) *t = s;
    const Point nearest = a + s * ab;
    return std::hypot(p.x - nearest.x, p.y - nearest.y);
}

double first_boundary_crossing(const Polygon& polygon, Point a, Point b) noexcept {
    const Point dir = b - a;
    double best = -1.0;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point p = polygon[i];
        const Point edge = polygon[(i + 1) % n] - p;
        const double denom = cross(dir, edge);
        if (denom == 0.0) continue;
        const Point ap = p - a;
        const double t = cross(ap, edge) / denom;
        const double s = cross(ap, dir) / denom;
        if (t > 1e-12 && t <= 1.0 && s >= 0.0 && s <= 1.0 && (best < 0.0 || t < best)) best = t;
    }
    return best;
}

} // namespace hairsynth
