#include "hairsynth/pipeline.hpp"

#include "hairsynth/error.hpp"
#include "hairsynth/filter.hpp"
#include "hairsynth/random.hpp"
#include "hairsynth/refine.hpp"
#include "hairsynth/stroke.hpp"

#include <chrono>
#include <cstdio>

namespace hairsynth {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename F>
auto run_stage(std::size_t patch, Stage stage, F&& body) {
    try {
        return body();
    } catch (const PipelineError&) {
        throw;
    } catch (const std::exception& e) {
        throw PipelineError(patch, std::string(to_string(stage)), e.what());
    }
}

std::string format_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

} // namespace

std::uint64_t patch_seed(std::uint64_t global_seed, std::size_t patch_index) noexcept {
    return mix_seed(global_seed, static_cast<std::uint64_t>(patch_index));
}

std::string format_checksum(std::uint64_t checksum) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(checksum));
    return buf;
}

std::string RenderReport::to_text() const {
    std::string out;
    out += "stage_limit=" + std::string(to_string(stage_limit)) + "\n";
    out += "patches=" + std::to_string(patches.size()) + "\n";
    for (const PatchReport& p : patches) {
        const std::string key = "patch." + std::to_string(p.index) + ".";
        out += key + "mask_pixels=" + std::to_string(p.mask_pixels) + "\n";
        if (p.draw_ms) {
            out += key + "strokes=" + std::to_string(p.stroke_count) + "\n";
            out += key + "draw_ms=" + format_ms(*p.draw_ms) + "\n";
        }
        if (p.filter_ms) out += key + "filter_ms=" + format_ms(*p.filter_ms) + "\n";
        if (p.refine_ms) {
            out += key + "pairs=" + std::to_string(p.pairs_emitted) + "\n";
            out += key + "refine_ms=" + format_ms(*p.refine_ms) + "\n";
        }
    }
    out += "checksum=" + format_checksum(checksum) + "\n";
    return out;
}

RenderOutput run_pipeline(const Image& source, const SceneSpec& scene, RenderOptions options) {
    const Stage limit = options.stage_limit.value_or(scene.stage_limit);
    validate_scene_for_image(scene, source.width(), source.height());

    RenderOutput out{source, {}};
    out.report.stage_limit = limit;
    for (std::size_t i = 0; i < scene.patches.size(); ++i) {
        const HairPatch& patch = scene.patches[i];
        PatchReport entry;
        entry.index = i;

        const RegionMask mask = rasterize_polygon(patch.polygon, source.width(), source.height());
        entry.mask_pixels = mask.count();

        auto start = Clock::now();
        DrawResult drawn = run_stage(i, Stage::draw, [&] {
            return draw_patch_with_stats(out.image, patch, patch_seed(scene.seed, i));
        });
        out.image = std::move(drawn.image);
        entry.stroke_count = drawn.stroke_count;
        entry.draw_ms = elapsed_ms(start);

        // Nothing was drawn, so there is no stylized hair to filter or blend.
        if (entry.stroke_count == 0) {
            out.report.patches.push_back(entry);
            continue;
        }
        if (limit >= Stage::filter) {
            start = Clock::now();
            out.image = run_stage(i, Stage::filter, [&] {
                const Kernel kernel = build_kernel(patch.kernel_params);
                return convolve_fast(out.image, kernel, &mask, FilterOptions{options.threads});
            });
            entry.filter_ms = elapsed_ms(start);
        }
        if (limit >= Stage::refine) {
            start = Clock::now();
            RefineResult refined = run_stage(i, Stage::refine, [&] {
                return refine_boundary_with_stats(out.image, mask, patch.refine_params);
            });
            out.image = std::move(refined.image);
            entry.pairs_emitted = refined.pairs_emitted;
            entry.refine_ms = elapsed_ms(start);
        }
        out.report.patches.push_back(entry);
    }
    out.report.checksum = image_checksum(out.image);
    return out;
}

} // namespace hairsynth
