#include "hairsynth/kernel.hpp"

#include "hairsynth/error.hpp"
#include "hairsynth/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace hairsynth {

namespace {

struct StreakCell {
    bool on_path;
    double arc_length;
};

StreakCell classify_cell(const StreakKernelParams& p, double dx, double dy) noexcept {
    const double theta = p.angle_deg * std::numbers::pi / 180.0;
    const Point tangent{std::cos(theta), std::sin(theta)};
    const Point offset{dx, dy};
    const double half = 0.5 * p.thickness;
    if (p.curvature == 0.0) {
        const double across = std::abs(cross(tangent, offset));
        return {across <= half, std::abs(dot(tangent, offset))};
    }
    // Circle tangent to the streak direction at the kernel center.
    const double radius = 1.0 / std::abs(p.curvature);
    const Point normal{-tangent.y, tangent.x};
    const Point center = (1.0 / p.curvature) * normal;
    const Point to_origin = Point{0.0, 0.0} - center;
    const Point to_cell = offset - center;
    const double r = std::hypot(to_cell.x, to_cell.y);
    const double across = std::abs(r - radius);
    if (r == 0.0) return {across <= half, std::numbers::pi * radius};
    const double swept = std::atan2(cross(to_origin, to_cell), dot(to_origin, to_cell));
    return {across <= half, radius * std::abs(swept)};
}

} // namespace

Kernel::Kernel(int size, std::vector<double> coeffs) : size_(size), coeffs_(std::move(coeffs)) {
    if (size < 1 || size % 2 == 0) throw ValidationError("size", "must be odd and >= 1, got " + std::to_string(size));
    if (coeffs_.size() != static_cast<std::size_t>(size) * size) {
        throw ValidationError("coeffs", "expected " + std::to_string(size * size) + " coefficients, got " +
                                            std::to_string(coeffs_.size()));
    }
    for (double c : coeffs_) {
        if (!(c >= 0.0 && c <= 1.0)) {
            throw ValidationError("coeffs", "every coefficient must lie in [0,1], got " + std::to_string(c));
        }
    }
}

double Kernel::sum() const noexcept { return std::accumulate(coeffs_.begin(), coeffs_.end(), 0.0); }

double Kernel::max_coeff() const noexcept { return *std::max_element(coeffs_.begin(), coeffs_.end()); }

std::size_t Kernel::nonzero_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(), [](double c) { return c != 0.0; }));
}

void validate(const StreakKernelParams& p) {
    if (p.size < 3 || p.size % 2 == 0) {
        throw ValidationError("size", "must be odd and >= 3, got " + std::to_string(p.size));
    }
    if (!std::isfinite(p.angle_deg)) throw ValidationError("angle_deg", "must be finite");
    if (!std::isfinite(p.curvature)) throw ValidationError("curvature", "must be finite");
    if (!(p.thickness >= 0.5) || !std::isfinite(p.thickness)) {
        throw ValidationError("thickness", "must be >= 0.5, got " + std::to_string(p.thickness));
    }
    if (!(p.falloff_sigma > 0.0) || !std::isfinite(p.falloff_sigma)) {
        throw ValidationError("sigma", "must be > 0, got " + std::to_string(p.falloff_sigma));
    }
    if (!(p.target_sum > 0.0) || !std::isfinite(p.target_sum)) {
        throw ValidationError("sum", "must be > 0, got " + std::to_string(p.target_sum));
    }
}

bool streak_cell_on_path(const StreakKernelParams& params, int dx, int dy) noexcept {
    return classify_cell(params, dx, dy).on_path;
}

Kernel make_streak_kernel(const StreakKernelParams& p) {
    validate(p);
    const int r = p.size / 2;
    const double two_sigma2 = 2.0 * p.falloff_sigma * p.falloff_sigma;
    std::vector<double> weights(static_cast<std::size_t>(p.size) * p.size, 0.0);
    double total = 0.0;
    for (int row = 0; row < p.size; ++row) {
        for (int col = 0; col < p.size; ++col) {
            const StreakCell cell = classify_cell(p, col - r, row - r);
            if (!cell.on_path) continue;
            const double w = std::exp(-cell.arc_length * cell.arc_length / two_sigma2);
            weights[static_cast<std::size_t>(row) * p.size + col] = w;
            total += w;
        }
    }
    // The center cell is always on the path with weight 1.
    assert(total >= 1.0);
    const double scale = p.target_sum / total;
    for (double& w : weights) w *= scale;
    try {
        return Kernel(p.size, std::move(weights));
    } catch (const ValidationError&) {
        throw ValidationError("sum", "target sum " + std::to_string(p.target_sum) +
                                         " pushes a coefficient above 1 for this streak");
    }
}

Kernel identity_kernel(int size) {
    if (size < 1 || size % 2 == 0) throw ValidationError("size", "must be odd and >= 1, got " + std::to_string(size));
    std::vector<double> coeffs(static_cast<std::size_t>(size) * size, 0.0);
    coeffs[coeffs.size() / 2] = 1.0;
    return Kernel(size, std::move(coeffs));
}

Kernel normalize_kernel(const Kernel& kernel, double target_sum) {
    if (!(target_sum > 0.0)) throw ValidationError("sum", "target sum must be > 0");
    const double current = kernel.sum();
    if (current <= 0.0) throw ValidationError("coeffs", "cannot normalize an all-zero kernel");
    const double scale = target_sum / current;
    std::vector<double> coeffs = kernel.coeffs();
    for (double& c : coeffs) c *= scale;
    return Kernel(kernel.size(), std::move(coeffs));
}

Kernel build_kernel(const KernelSpec& spec) {
    if (const auto* streak = std::get_if<StreakKernelParams>(&spec)) return make_streak_kernel(*streak);
    return std::get<Kernel>(spec);
}

Image kernel_preview(const Kernel& kernel, int scale) {
    if (scale < 1) throw ValidationError("scale", "must be >= 1");
    const int n = kernel.size();
    Image img(n * scale, n * scale, Color{1.0, 1.0, 1.0, 1.0});
    const double peak = kernel.max_coeff();
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            const double c = kernel.at(row, col);
            if (c == 0.0) continue;
            // Faintest positive cell stays visibly off-white.
            const double fade = 0.85 * (1.0 - c / peak);
            const Color red{1.0, fade, fade, 1.0};
            for (int y = row * scale; y < (row + 1) * scale; ++y) {
                for (int x = col * scale; x < (col + 1) * scale; ++x) img.set_pixel(x, y, red);
            }
        }
    }
    return img;
}

} // namespace hairsynth
