#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

std::vector<double> convolve_quadruple_loop(const std::vector<double>& rgba, int width, int height,
                                            const std::vector<double>& kernel, int size,
                                            const std::vector<bool>* mask) {
    std::vector<double> out = rgba;
    const int half = size / 2;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (mask && !(*mask)[y * width + x]) continue;
            double acc[3] = {0.0, 0.0, 0.0};
            for (int ky = 0; ky < size; ++ky) {
                for (int kx = 0; kx < size; ++kx) {
                    int sx = x + kx - half;
                    int sy = y + ky - half;
                    if (sx < 0) sx = 0;
                    if (sy < 0) sy = 0;
                    if (sx > width - 1) sx = width - 1;
                    if (sy > height - 1) sy = height - 1;
                    const double k = kernel[ky * size + kx];
                    for (int c = 0; c < 3; ++c) acc[c] += k * rgba[(sy * width + sx) * 4 + c];
                }
            }
            for (int c = 0; c < 3; ++c) out[(y * width + x) * 4 + c] = std::min(1.0, std::max(0.0, acc[c]));
        }
    }
    return out;
}

bool pnpoly(const std::vector<double>& xs, const std::vector<double>& ys, double x, double y) {
    bool c = false;
    const std::size_t n = xs.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        if (((ys[i] > y) != (ys[j] > y)) && (x < (xs[j] - xs[i]) * (y - ys[i]) / (ys[j] - ys[i]) + xs[i])) c = !c;
    }
    return c;
}

double fan_area(const hairsynth::Polygon& polygon) {
    double twice = 0.0;
    const auto& o = polygon[0];
    for (std::size_t i = 1; i + 1 < polygon.size(); ++i) {
        const double ux = polygon[i].x - o.x;
        const double uy = polygon[i].y - o.y;
        const double vx = polygon[i + 1].x - o.x;
        const double vy = polygon[i + 1].y - o.y;
        twice += ux * vy - uy * vx;
    }
    return std::abs(twice) / 2.0;
}

double two_point_line(double a, double ia, double b, double ib, double t) {
    const double slope = (ib - ia) / (b - a);
    const double intercept = ia - slope * a;
    return slope * t + intercept;
}

double point_segment_distance(double x, double y, double ax, double ay, double bx, double by) {
    const double vx = bx - ax;
    const double vy = by - ay;
    const double len2 = vx * vx + vy * vy;
    double t = len2 == 0.0 ? 0.0 : ((x - ax) * vx + (y - ay) * vy) / len2;
    t = std::max(0.0, std::min(1.0, t));
    const double dx = x - (ax + t * vx);
    const double dy = y - (ay + t * vy);
    return std::sqrt(dx * dx + dy * dy);
}

double supersampled_coverage(int px, int py, double ax, double ay, double bx, double by, double half_width) {
    constexpr int n = 16;
    int inside = 0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double sx = px + (i + 0.5) / n;
            const double sy = py + (j + 0.5) / n;
            if (point_segment_distance(sx, sy, ax, ay, bx, by) <= half_width) ++inside;
        }
    }
    return static_cast<double>(inside) / (n * n);
}

double autocorrelation(const std::vector<double>& field, int width, int height, int dx, int dy, int margin) {
    double mean = 0.0;
    int count = 0;
    for (int y = margin; y < height - margin; ++y) {
        for (int x = margin; x < width - margin; ++x) {
            mean += field[y * width + x];
            ++count;
        }
    }
    mean /= count;
    double var = 0.0;
    double cov = 0.0;
    for (int y = margin; y < height - margin; ++y) {
        for (int x = margin; x < width - margin; ++x) {
            const double a = field[y * width + x] - mean;
            var += a * a;
            const int x2 = x + dx;
            const int y2 = y + dy;
            if (x2 < margin || y2 < margin || x2 >= width - margin || y2 >= height - margin) continue;
            cov += a * (field[y2 * width + x2] - mean);
        }
    }
    return cov / var;
}

double distance_to_region(const hairsynth::Polygon& polygon, double x, double y) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& p : polygon) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    if (pnpoly(xs, ys, x, y)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const auto& a = polygon[i];
        const auto& b = polygon[(i + 1) % polygon.size()];
        best = std::min(best, point_segment_distance(x, y, a.x, a.y, b.x, b.y));
    }
    return best;
}

} // namespace oracle
