#pragma once

#include "hairsynth/image.hpp"

#include <variant>
#include <vector>

namespace hairsynth {

/// Odd-sized square grid of coefficients in [0,1]. The center cell weights
/// the source pixel itself; cell (row, col) weights the source pixel at
/// offset (col - radius, row - radius).
class Kernel {
public:
    /// Validates size (odd, >= 1), coefficient count and range.
    Kernel(int size, std::vector<double> coeffs);

    int size() const noexcept { return size_; }
    int radius() const noexcept { return size_ / 2; }
    double at(int row, int col) const noexcept { return coeffs_[static_cast<std::size_t>(row) * size_ + col]; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    double sum() const noexcept;
    double max_coeff() const noexcept;
    std::size_t nonzero_count() const noexcept;

    bool operator==(const Kernel&) const = default;

private:
    int size_;
    std::vector<double> coeffs_;
};

/// Parameters of a directional streak. Angles are in degrees, 0 pointing
/// right and increasing clockwise (y points down). Positive curvature bends
/// the streak towards the clockwise side.
struct StreakKernelParams {
    int size = 19;
    double angle_deg = 0.0;
    double curvature = 0.0;
    double thickness = 1.0;
    double falloff_sigma = 6.0;
    double target_sum = 1.0;

    bool operator==(const StreakKernelParams&) const = default;
};

/// Streak parameters or an explicit coefficient grid.
using KernelSpec = std::variant<StreakKernelParams, Kernel>;

/// Throws ValidationError naming the offending field.
void validate(const StreakKernelParams& params);

/// Cells whose centers lie within thickness/2 of the streak path get
/// exp(-d^2 / (2 sigma^2)), d being the arc length from the kernel center
/// to the nearest path point; all other cells are exactly zero. The grid
/// is then scaled to sum to target_sum.
Kernel make_streak_kernel(const StreakKernelParams& params);

/// True when the cell at offset (dx, dy) from the center lies on the streak
/// path of `params`, independent of kernel size.
bool streak_cell_on_path(const StreakKernelParams& params, int dx, int dy) noexcept;

Kernel identity_kernel(int size);

/// Scales every coefficient by target_sum / sum().
Kernel normalize_kernel(const Kernel& kernel, double target_sum);

Kernel build_kernel(const KernelSpec& spec);

/// Zero cells white; positive cells red, deepening with coeff / max_coeff.
/// Each cell becomes a `scale` x `scale` block.
Image kernel_preview(const Kernel& kernel, int scale = 1);

} // namespace hairsynth
