#include "cli.hpp"

#include <hairsynth/codec.hpp>
#include <hairsynth/error.hpp>
#include <hairsynth/kernel.hpp>
#include <hairsynth/pipeline.hpp>
#include <hairsynth/scene.hpp>
#include <hairsynth/service.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <string>

namespace hairsynth::cli {

namespace {

namespace fs = std::filesystem;

struct RenderArgs {
    std::string image;
    std::string scene;
    std::string out;
    std::string stage;
    std::string report;
    int threads = 1;
};

struct KernelArgs {
    StreakKernelParams params;
    std::string preview;
    int scale = 1;
};

struct ValidateArgs {
    std::string scene;
    std::string image;
};

struct ServeArgs {
    std::string host = "127.0.0.1";
    std::optional<int> port;
    std::string static_dir;
    std::size_t max_pixels = ServiceConfig{}.max_pixels;
    int threads = 1;
};

std::string read_text(const std::string& path) {
    const auto bytes = read_file_bytes(path);
    return {bytes.begin(), bytes.end()};
}

int run_render(const RenderArgs& args, std::ostream& out) {
    SceneSpec scene = parse_scene(read_text(args.scene));
    std::string image_path = args.image;
    if (image_path.empty()) {
        if (scene.image.empty()) throw ValidationError("image", "no --image given and the scene names no image");
        const fs::path relative(scene.image);
        image_path = relative.is_absolute() ? relative.string() : (fs::path(args.scene).parent_path() / relative).string();
    }
    const Image source = load_image(image_path);

    RenderOptions options;
    options.threads = args.threads;
    if (!args.stage.empty()) options.stage_limit = parse_stage(args.stage);
    const RenderOutput result = run_pipeline(source, scene, options);
    save_image(result.image, args.out);
    if (!args.report.empty()) {
        const std::string text = result.report.to_text();
        write_file_bytes(args.report, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
    }
    out << "wrote " << args.out << " (checksum " << format_checksum(result.report.checksum) << ")\n";
    return kExitOk;
}

int run_kernel(const KernelArgs& args, std::ostream& out) {
    const Kernel kernel = make_streak_kernel(args.params);
    if (!args.preview.empty()) {
        save_image(kernel_preview(kernel, args.scale), args.preview);
        out << "wrote " << args.preview << " (" << kernel.size() << "x" << kernel.size() << ", "
            << kernel.nonzero_count() << " nonzero taps)\n";
        return kExitOk;
    }
    char buf[32];
    for (int row = 0; row < kernel.size(); ++row) {
        for (int col = 0; col < kernel.size(); ++col) {
            std::snprintf(buf, sizeof buf, "%s%.6f", col ? " " : "", kernel.at(row, col));
            out << buf;
        }
        out << '\n';
    }
    return kExitOk;
}

int run_validate(const ValidateArgs& args, std::ostream& out) {
    const SceneSpec scene = parse_scene(read_text(args.scene));
    if (!args.image.empty()) {
        const Image image = load_image(args.image);
        validate_scene_for_image(scene, image.width(), image.height());
    }
    out << "ok: " << scene.patches.size() << " patch" << (scene.patches.size() == 1 ? "" : "es") << ", stage "
        << to_string(scene.stage_limit) << "\n";
    return kExitOk;
}

int run_serve(const ServeArgs& args, std::ostream& out) {
    ServiceConfig config;
    config.host = args.host;
    config.port = resolve_port(args.port);
    config.static_dir = args.static_dir;
    config.max_pixels = args.max_pixels;
    config.render_threads = args.threads;
    Service service(config);
    const int port = service.bind();
    out << "listening on http://" << config.host << ":" << port << "/\n" << std::flush;
    service.listen();
    return kExitOk;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"hairsynth: stroke-drawn, streak-filtered hair synthesis on raster images", "hairsynth"};
    app.require_subcommand(1);

    RenderArgs render;
    auto* render_cmd = app.add_subcommand("render", "Run the draw/filter/refine pipeline on an image");
    render_cmd->add_option("--image", render.image, "Source image (PNG or PPM); defaults to the scene's image");
    render_cmd->add_option("--scene", render.scene, "Scene JSON")->required();
    render_cmd->add_option("--out", render.out, "Output image (.png or .ppm)")->required();
    render_cmd->add_option("--stage", render.stage, "Last stage to run")
        ->check(CLI::IsMember({"draw", "filter", "refine"}));
    render_cmd->add_option("--report", render.report, "Write a key=value render report");
    render_cmd->add_option("--threads", render.threads, "Filter worker threads")->check(CLI::PositiveNumber);

    KernelArgs kernel;
    auto* kernel_cmd = app.add_subcommand("kernel", "Build a streak kernel and print or preview it");
    kernel_cmd->add_option("--size", kernel.params.size, "Odd kernel size >= 3")->capture_default_str();
    kernel_cmd->add_option("--angle", kernel.params.angle_deg, "Streak angle, degrees clockwise from +x")
        ->capture_default_str();
    kernel_cmd->add_option("--curvature", kernel.params.curvature, "Signed curvature, 1/px")->capture_default_str();
    kernel_cmd->add_option("--thickness", kernel.params.thickness, "Streak thickness, px")->capture_default_str();
    kernel_cmd->add_option("--sigma", kernel.params.falloff_sigma, "Arc-length falloff, px")->capture_default_str();
    kernel_cmd->add_option("--sum", kernel.params.target_sum, "Coefficient sum")->capture_default_str();
    kernel_cmd->add_option("--preview", kernel.preview, "Write a white/red preview image");
    kernel_cmd->add_option("--scale", kernel.scale, "Preview pixels per kernel cell")->check(CLI::PositiveNumber);

    ValidateArgs validate;
    auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a scene");
    validate_cmd->add_option("--scene", validate.scene, "Scene JSON")->required();
    validate_cmd->add_option("--image", validate.image, "Also check patches against this image's bounds");

    ServeArgs serve;
    auto* serve_cmd = app.add_subcommand("serve", "Run the local HTTP service");
    serve_cmd->add_option("--host", serve.host, "Bind address")->capture_default_str();
    serve_cmd->add_option("--port", serve.port, "Port (default $HAIRSYNTH_PORT or 8080)");
    serve_cmd->add_option("--static-dir", serve.static_dir, "Editor assets served at /");
    serve_cmd->add_option("--max-pixels", serve.max_pixels, "Upload size limit in pixels")->capture_default_str();
    serve_cmd->add_option("--threads", serve.threads, "Filter worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const CLI::App* failing = &app;
        for (const CLI::App* sub : app.get_subcommands()) failing = sub;
        err << failing->help();
        return kExitUsage;
    }

    try {
        if (*render_cmd) return run_render(render, out);
        if (*kernel_cmd) return run_kernel(kernel, out);
        if (*validate_cmd) return run_validate(validate, out);
        if (*serve_cmd) return run_serve(serve, out);
    } catch (const PipelineError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const SceneSyntaxError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const UnsupportedBitDepthError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ImageTooLargeError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    err << app.help();
    return kExitUsage;
}

} // namespace hairsynth::cli
