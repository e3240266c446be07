#include "hairsynth/scene.hpp"

#include "hairsynth/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace hairsynth {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ValidationError(path.empty() ? "<root>" : path, "must be an object");
}

void check_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ValidationError(join(path, key), "unknown key");
        }
    }
}

double to_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ValidationError(path, "must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ValidationError(path, "must be finite");
    return v;
}

double number_or(const json& obj, std::string_view key, const std::string& path, double fallback) {
    const auto it = obj.find(key);
    return it == obj.end() ? fallback : to_number(*it, join(path, key));
}

int int_or(const json& obj, std::string_view key, const std::string& path, int fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number_integer()) throw ValidationError(join(path, key), "must be an integer");
    const auto v = it->get<std::int64_t>();
    if (v < -(1 << 30) || v > (1 << 30)) throw ValidationError(join(path, key), "is out of range");
    return static_cast<int>(v);
}

Range range_or(const json& obj, std::string_view key, const std::string& path, Range fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    const std::string p = join(path, key);
    if (!it->is_array() || it->size() != 2) throw ValidationError(p, "must be a [min, max] array");
    return {to_number((*it)[0], index_path(p, 0)), to_number((*it)[1], index_path(p, 1))};
}

Color color_or(const json& obj, std::string_view key, const std::string& path, Color fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    const std::string p = join(path, key);
    if (!it->is_array() || it->size() != 3) throw ValidationError(p, "must be an [r, g, b] array");
    return {to_number((*it)[0], index_path(p, 0)), to_number((*it)[1], index_path(p, 1)),
            to_number((*it)[2], index_path(p, 2)), 1.0};
}

// Re-raise a module-level ValidationError under the document path.
template <typename F>
void with_prefix(const std::string& prefix, F&& check) {
    try {
        check();
    } catch (const ValidationError& e) {
        throw ValidationError(e.field().empty() ? prefix : join(prefix, e.field()), e.constraint());
    } catch (const GeometryError& e) {
        throw ValidationError(prefix, e.what());
    }
}

Polygon parse_polygon(const json& j, const std::string& path) {
    if (!j.is_array()) throw ValidationError(path, "must be an array of [x, y] vertices");
    Polygon polygon;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = index_path(path, i);
        if (!j[i].is_array() || j[i].size() != 2) throw ValidationError(p, "must be an [x, y] array");
        polygon.push_back({to_number(j[i][0], index_path(p, 0)), to_number(j[i][1], index_path(p, 1))});
    }
    if (polygon.size() < 3) throw ValidationError(path, "needs at least 3 vertices");
    with_prefix(path, [&] { require_valid_polygon(polygon); });
    return polygon;
}

StrokeParams parse_strokes(const json& j, const std::string& path) {
    require_object(j, path);
    check_keys(j, path,
               {"density", "length", "width", "color", "color_jitter", "waviness_amp", "waviness_freq",
                "direction_deg", "spread_deg", "segments_per_stroke"});
    StrokeParams d;
    StrokeParams p;
    p.density = number_or(j, "density", path, d.density);
    p.length = range_or(j, "length", path, d.length);
    p.width = range_or(j, "width", path, d.width);
    p.color_base = color_or(j, "color", path, d.color_base);
    p.color_jitter = number_or(j, "color_jitter", path, d.color_jitter);
    p.waviness_amp = number_or(j, "waviness_amp", path, d.waviness_amp);
    p.waviness_freq = number_or(j, "waviness_freq", path, d.waviness_freq);
    p.direction_deg = number_or(j, "direction_deg", path, d.direction_deg);
    p.spread_deg = number_or(j, "spread_deg", path, d.spread_deg);
    p.segments_per_stroke = int_or(j, "segments_per_stroke", path, d.segments_per_stroke);
    with_prefix(path, [&] { validate(p); });
    return p;
}

KernelSpec parse_kernel(const json& j, const std::string& path) {
    require_object(j, path);
    if (j.contains("coeffs")) {
        check_keys(j, path, {"coeffs"});
        const std::string cp = join(path, "coeffs");
        const json& rows = j["coeffs"];
        if (!rows.is_array() || rows.empty()) throw ValidationError(cp, "must be a non-empty square array");
        std::vector<double> flat;
        const std::size_t n = rows.size();
        for (std::size_t r = 0; r < n; ++r) {
            const std::string rp = index_path(cp, r);
            if (!rows[r].is_array() || rows[r].size() != n) throw ValidationError(rp, "must have " + std::to_string(n) + " entries");
            for (std::size_t c = 0; c < n; ++c) flat.push_back(to_number(rows[r][c], index_path(rp, c)));
        }
        if (n % 2 == 0) throw ValidationError(join(path, "size"), "must be odd, got " + std::to_string(n));
        std::optional<Kernel> kernel;
        with_prefix(path, [&] { kernel.emplace(static_cast<int>(n), std::move(flat)); });
        return *kernel;
    }
    check_keys(j, path, {"size", "angle_deg", "curvature", "thickness", "sigma", "sum"});
    StreakKernelParams d;
    StreakKernelParams p;
    p.size = int_or(j, "size", path, d.size);
    p.angle_deg = number_or(j, "angle_deg", path, d.angle_deg);
    p.curvature = number_or(j, "curvature", path, d.curvature);
    p.thickness = number_or(j, "thickness", path, d.thickness);
    p.falloff_sigma = number_or(j, "sigma", path, d.falloff_sigma);
    p.target_sum = number_or(j, "sum", path, d.target_sum);
    with_prefix(path, [&] {
        validate(p);
        make_streak_kernel(p);
    });
    return p;
}

RefineParams parse_refine(const json& j, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"band_width", "jump_threshold"});
    RefineParams d;
    RefineParams p;
    p.band_width = int_or(j, "band_width", path, d.band_width);
    p.jump_threshold = number_or(j, "jump_threshold", path, d.jump_threshold);
    with_prefix(path, [&] { validate(p); });
    return p;
}

HairPatch parse_patch(const json& j, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"polygon", "strokes", "kernel", "refine"});
    if (!j.contains("polygon")) throw ValidationError(join(path, "polygon"), "is required");
    HairPatch patch;
    patch.polygon = parse_polygon(j["polygon"], join(path, "polygon"));
    if (j.contains("strokes")) patch.stroke_params = parse_strokes(j["strokes"], join(path, "strokes"));
    if (j.contains("kernel")) patch.kernel_params = parse_kernel(j["kernel"], join(path, "kernel"));
    if (j.contains("refine")) patch.refine_params = parse_refine(j["refine"], join(path, "refine"));
    return patch;
}

ordered_json kernel_to_json(const KernelSpec& spec) {
    if (const auto* p = std::get_if<StreakKernelParams>(&spec)) {
        return ordered_json{{"size", p->size},           {"angle_deg", p->angle_deg}, {"curvature", p->curvature},
                            {"thickness", p->thickness}, {"sigma", p->falloff_sigma}, {"sum", p->target_sum}};
    }
    const Kernel& k = std::get<Kernel>(spec);
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < k.size(); ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < k.size(); ++c) row.push_back(k.at(r, c));
        rows.push_back(std::move(row));
    }
    return ordered_json{{"coeffs", std::move(rows)}};
}

} // namespace

std::string_view to_string(Stage stage) noexcept {
    switch (stage) {
    case Stage::draw:
        return "draw";
    case Stage::filter:
        return "filter";
    case Stage::refine:
        return "refine";
    }
    return "refine";
}

std::optional<Stage> parse_stage(std::string_view name) noexcept {
    for (Stage s : {Stage::draw, Stage::filter, Stage::refine}) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

SceneSpec parse_scene(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw SceneSyntaxError(e.what(), e.byte);
    }
    require_object(doc, "");
    check_keys(doc, "", {"image", "seed", "stage", "patches"});

    SceneSpec scene;
    if (doc.contains("image")) {
        if (!doc["image"].is_string()) throw ValidationError("image", "must be a string");
        scene.image = doc["image"].get<std::string>();
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) throw ValidationError("seed", "must be a non-negative 64-bit integer");
        scene.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("stage")) {
        const json& s = doc["stage"];
        const auto stage = s.is_string() ? parse_stage(s.get<std::string>()) : std::nullopt;
        if (!stage) throw ValidationError("stage", "must be one of draw, filter, refine");
        scene.stage_limit = *stage;
    }
    if (!doc.contains("patches") || !doc["patches"].is_array()) {
        throw ValidationError("patches", "must be an array of patches");
    }
    const json& patches = doc["patches"];
    if (patches.empty()) throw ValidationError("patches", "needs at least one patch");
    for (std::size_t i = 0; i < patches.size(); ++i) {
        scene.patches.push_back(parse_patch(patches[i], index_path("patches", i)));
    }
    return scene;
}

std::string serialize_scene(const SceneSpec& scene) {
    ordered_json doc;
    doc["image"] = scene.image;
    doc["seed"] = scene.seed;
    doc["stage"] = std::string(to_string(scene.stage_limit));
    ordered_json patches = ordered_json::array();
    for (const HairPatch& patch : scene.patches) {
        ordered_json polygon = ordered_json::array();
        for (const Point& p : patch.polygon) polygon.push_back({p.x, p.y});
        const StrokeParams& s = patch.stroke_params;
        ordered_json strokes{{"density", s.density},
                             {"length", {s.length.min, s.length.max}},
                             {"width", {s.width.min, s.width.max}},
                             {"color", {s.color_base.r, s.color_base.g, s.color_base.b}},
                             {"color_jitter", s.color_jitter},
                             {"waviness_amp", s.waviness_amp},
                             {"waviness_freq", s.waviness_freq},
                             {"direction_deg", s.direction_deg},
                             {"spread_deg", s.spread_deg},
                             {"segments_per_stroke", s.segments_per_stroke}};
        ordered_json refine{{"band_width", patch.refine_params.band_width},
                            {"jump_threshold", patch.refine_params.jump_threshold}};
        patches.push_back(ordered_json{{"polygon", std::move(polygon)},
                                       {"strokes", std::move(strokes)},
                                       {"kernel", kernel_to_json(patch.kernel_params)},
                                       {"refine", std::move(refine)}});
    }
    doc["patches"] = std::move(patches);
    return doc.dump(2) + "\n";
}

void validate_scene_for_image(const SceneSpec& scene, int width, int height) {
    for (std::size_t i = 0; i < scene.patches.size(); ++i) {
        const std::string path = index_path("patches", i) + ".polygon";
        std::optional<RegionMask> mask;
        with_prefix(path, [&] { mask.emplace(rasterize_polygon(scene.patches[i].polygon, width, height)); });
        if (mask->empty()) {
            throw ValidationError(path, "covers no pixel of the " + std::to_string(width) + "x" +
                                            std::to_string(height) + " image");
        }
    }
}

} // namespace hairsynth
