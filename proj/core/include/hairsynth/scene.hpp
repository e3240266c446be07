#pragma once

#include "hairsynth/stroke.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hairsynth {

/// Pipeline stages in execution order.
enum class Stage { draw = 0, filter = 1, refine = 2 };

std::string_view to_string(Stage stage) noexcept;
/// Accepts "draw", "filter" or "refine".
std::optional<Stage> parse_stage(std::string_view name) noexcept;

/// Declarative description of a render job.
struct SceneSpec {
    std::string image;
    std::uint64_t seed = 0;
    Stage stage_limit = Stage::refine;
    std::vector<HairPatch> patches;

    bool operator==(const SceneSpec&) const = default;
};

/// Parses and fully validates a JSON scene document. Unknown keys are
/// rejected. Throws SceneSyntaxError for malformed JSON and ValidationError
/// with a field path such as "patches[0].kernel.size" otherwise.
SceneSpec parse_scene(std::string_view text);

/// Writes every field explicitly, so the output reparses to an equal spec.
std::string serialize_scene(const SceneSpec& scene);

/// Checks that every patch covers at least one pixel of a width x height
/// image. Throws ValidationError("patches[i].polygon", ...).
void validate_scene_for_image(const SceneSpec& scene, int width, int height);

} // namespace hairsynth
