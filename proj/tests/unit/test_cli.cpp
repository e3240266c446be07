#include <doctest.h>

#include "cli.hpp"
#include "fixtures.hpp"

#include <hairsynth/codec.hpp>
#include <hairsynth/kernel.hpp>
#include <hairsynth/pipeline.hpp>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

using namespace hairsynth;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "hairsynth");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(HAIRSYNTH_SCRATCH_DIR) / "cli";
    fs::create_directories(dir);
    return dir / name;
}

void write_text(const fs::path& path, const std::string& text) {
    write_file_bytes(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

const char* kScene = R"({"image": "cli_src.png", "seed": 5, "patches": [
  {"polygon": [[8,8],[56,10],[50,50],[10,44]], "strokes": {"density": 25},
   "kernel": {"size": 9, "angle_deg": 90, "curvature": 0, "thickness": 1, "sigma": 3}}]})";

} // namespace

TEST_CASE("render") {
    SplitMix64 rng(90);
    const Image src = fixtures::random_image(64, 64, rng);
    save_image(src, scratch("cli_src.png"));
    write_text(scratch("scene.json"), kScene);

    const Outcome ok = run({"render", "--image", scratch("cli_src.png").string(), "--scene",
                            scratch("scene.json").string(), "--out", scratch("out.png").string(), "--report",
                            scratch("report.txt").string()});
    CHECK(ok.code == cli::kExitOk);
    REQUIRE(fs::exists(scratch("out.png")));
    const RenderOutput local = run_pipeline(load_image(scratch("cli_src.png")), parse_scene(kScene));
    CHECK(read_file_bytes(scratch("out.png")) == encode_image(local.image, ImageFormat::png));
    const std::string report = fixtures::read_text(scratch("report.txt"));
    CHECK(report.find("checksum=" + format_checksum(local.report.checksum)) != std::string::npos);
    CHECK(report.find("patch.0.refine_ms=") != std::string::npos);

    SUBCASE("image defaults to the scene's path relative to the scene") {
        const Outcome implicit = run({"render", "--scene", scratch("scene.json").string(), "--out",
                                      scratch("out2.ppm").string(), "--stage", "draw"});
        CHECK(implicit.code == cli::kExitOk);
        const Image drawn = load_image(scratch("out2.ppm"));
        const RenderOutput gated = run_pipeline(load_image(scratch("cli_src.png")), parse_scene(kScene), {1, Stage::draw});
        CHECK(encode_image(drawn, ImageFormat::ppm) == encode_image(gated.image, ImageFormat::ppm));
    }
    SUBCASE("usage errors") {
        const Outcome missing = run({"render", "--image", "a.png", "--out", "b.png"});
        CHECK(missing.code == cli::kExitUsage);
        CHECK(missing.err.find("--scene") != std::string::npos);
        CHECK(run({}).code == cli::kExitUsage);
        CHECK(run({"paint"}).code == cli::kExitUsage);
        CHECK(run({"render", "--scene", "s", "--out", "o", "--stage", "sketch"}).code == cli::kExitUsage);
    }
    SUBCASE("input errors") {
        std::string bad = kScene;
        bad.replace(bad.find("\"size\": 9"), 9, "\"size\": 20");
        write_text(scratch("bad.json"), bad);
        const Outcome invalid = run({"render", "--scene", scratch("bad.json").string(), "--out", scratch("x.png").string()});
        CHECK(invalid.code == cli::kExitInput);
        CHECK(invalid.err.find("patches[0].kernel.size") != std::string::npos);

        CHECK(run({"render", "--scene", scratch("nope.json").string(), "--out", scratch("x.png").string()}).code ==
              cli::kExitInput);
        write_text(scratch("garbage.png"), "not an image");
        CHECK(run({"render", "--image", scratch("garbage.png").string(), "--scene", scratch("scene.json").string(),
                   "--out", scratch("x.png").string()})
                  .code == cli::kExitInput);
    }
}

TEST_CASE("kernel") {
    const Outcome printed = run({"kernel", "--size", "3", "--thickness", "0.9", "--sigma", "1e9"});
    CHECK(printed.code == cli::kExitOk);
    CHECK(printed.out == "0.000000 0.000000 0.000000\n0.333333 0.333333 0.333333\n0.000000 0.000000 0.000000\n");

    const Outcome preview = run({"kernel", "--size", "31", "--angle", "20", "--preview", scratch("k.png").string()});
    CHECK(preview.code == cli::kExitOk);
    StreakKernelParams p;
    p.size = 31;
    p.angle_deg = 20;
    CHECK(read_file_bytes(scratch("k.png")) == encode_image(kernel_preview(make_streak_kernel(p)), ImageFormat::png));

    CHECK(run({"kernel", "--size", "20"}).code == cli::kExitInput);
    CHECK(run({"kernel", "--size", "abc"}).code == cli::kExitUsage);
}

TEST_CASE("validate") {
    write_text(scratch("valid.json"), kScene);
    const Outcome ok = run({"validate", "--scene", scratch("valid.json").string()});
    CHECK(ok.code == cli::kExitOk);
    CHECK(ok.out.rfind("ok: 1 patch", 0) == 0);

    save_image(Image(4, 4), scratch("tiny.png"));
    CHECK(run({"validate", "--scene", scratch("valid.json").string(), "--image", scratch("tiny.png").string()}).code ==
          cli::kExitInput);

    write_text(scratch("syntax.json"), "{\"image\": ");
    CHECK(run({"validate", "--scene", scratch("syntax.json").string()}).code == cli::kExitInput);
    CHECK(run({"validate"}).code == cli::kExitUsage);

    const std::string serialized = serialize_scene(fixtures::golden_scene());
    write_text(scratch("golden_roundtrip.json"), serialized);
    CHECK(run({"validate", "--scene", scratch("golden_roundtrip.json").string()}).code == cli::kExitOk);
}
