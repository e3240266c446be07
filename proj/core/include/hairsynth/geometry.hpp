#pragma once

#include "hairsynth/image.hpp"

#include <vector>

namespace hairsynth {

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

inline Point operator+(Point a, Point b) noexcept { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) noexcept { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) noexcept { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) noexcept { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) noexcept { return a.x * b.y - a.y * b.x; }

using Polygon = std::vector<Point>;

struct Bounds {
    double min_x, min_y, max_x, max_y;
};

/// Absolute shoelace area. Throws GeometryError for fewer than three
/// vertices or (near) zero area.
double polygon_area(const Polygon& polygon);

/// True when no two non-adjacent edges touch and adjacent edges meet only
/// at their shared vertex.
bool is_simple(const Polygon& polygon);

/// Throws GeometryError unless the polygon has >= 3 vertices, positive
/// area and no self-intersections.
void require_valid_polygon(const Polygon& polygon);

/// Even-odd test with a +x ray; boundaries follow the half-open crossing
/// rule so shared edges are never counted twice.
bool point_in_polygon(const Polygon& polygon, Point p) noexcept;

Bounds polygon_bounds(const Polygon& polygon) noexcept;

/// Scanline fill: pixel (x,y) is set iff its center (x+0.5, y+0.5) is
/// inside the polygon under the even-odd rule.
RegionMask rasterize_polygon(const Polygon& polygon, int width, int height);

/// Distance from `p` to segment [a,b]; `t` receives the clamped parameter
/// of the nearest point.
double distance_to_segment(Point p, Point a, Point b, double* t = nullptr) noexcept;

/// Smallest t in (0,1] at which segment a->b crosses the polygon boundary,
/// or a negative value when it stays on one side.
double first_boundary_crossing(const Polygon& polygon, Point a, Point b) noexcept;

} // namespace hairsynth
