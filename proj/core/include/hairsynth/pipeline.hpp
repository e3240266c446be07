#pragma once

#include "hairsynth/image.hpp"
#include "hairsynth/scene.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hairsynth {

struct RenderOptions {
    /// Worker threads for the filter stage.
    int threads = 1;
    /// Overrides scene.stage_limit when set.
    std::optional<Stage> stage_limit;
};

struct PatchReport {
    std::size_t index = 0;
    std::optional<double> draw_ms;
    std::optional<double> filter_ms;
    std::optional<double> refine_ms;
    std::size_t stroke_count = 0;
    std::size_t pairs_emitted = 0;
    std::size_t mask_pixels = 0;
};

struct RenderReport {
    Stage stage_limit = Stage::refine;
    std::vector<PatchReport> patches;
    std::uint64_t checksum = 0;

    /// Flat key=value lines, e.g. "patch.0.draw_ms=1.25".
    std::string to_text() const;
};

struct RenderOutput {
    Image image;
    RenderReport report;
};

/// Per-patch seed: splitmix mix of the global seed and the patch index.
std::uint64_t patch_seed(std::uint64_t global_seed, std::size_t patch_index) noexcept;

/// Runs draw -> filter -> refine for each patch in list order, stopping
/// after the stage limit. Later patches see earlier patches' output. A patch
/// that draws no strokes skips filter and refine.
/// Failures surface as PipelineError naming the patch and stage.
RenderOutput run_pipeline(const Image& source, const SceneSpec& scene, RenderOptions options = {});

std::string format_checksum(std::uint64_t checksum);

} // namespace hairsynth
