#include "hairsynth/service.hpp"

#include "hairsynth/codec.hpp"
#include "hairsynth/error.hpp"
#include "hairsynth/kernel.hpp"
#include "hairsynth/pipeline.hpp"
#include "hairsynth/scene.hpp"

#include <httplib.h>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <random>
#include <thread>
#include <unordered_map>

namespace hairsynth {

namespace {

using json = nlohmann::json;

struct CachedRender {
    std::uint64_t revision = 0;
    std::string png;
    std::string report;
};

struct Session {
    std::string id;
    std::shared_ptr<const Image> image;
    std::mutex mu;
    SceneSpec scene;
    std::uint64_t revision = 0;
    std::map<Stage, CachedRender> results;
};

void send_error(httplib::Response& res, int status, const std::string& message, const std::string& field = {}) {
    json body{{"error", message}};
    if (!field.empty()) body["field"] = field;
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

std::optional<std::uint64_t> parse_revision(std::string text) {
    if (text.starts_with("W/")) text.erase(0, 2);
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"') text = text.substr(1, text.size() - 2);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
    return value;
}

std::optional<Stage> stage_param(const httplib::Request& req) {
    if (!req.has_param("stage")) return Stage::refine;
    return parse_stage(req.get_param_value("stage"));
}

std::string one_line(std::string text) {
    while (!text.empty() && text.back() == '\n') text.pop_back();
    for (char& c : text) {
        if (c == '\n') c = ';';
    }
    return text;
}

void set_render_headers(httplib::Response& res, const CachedRender& render) {
    res.set_header("X-Scene-Revision", std::to_string(render.revision));
    res.set_header("X-Render-Report", render.report);
    res.set_content(render.png, "image/png");
}

} // namespace

int resolve_port(std::optional<int> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("HAIRSYNTH_PORT")) {
        int port = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), port);
        if (ec == std::errc() && ptr == text.data() + text.size() && port >= 0 && port < 65536) return port;
    }
    return 8080;
}

struct Service::Impl {
    ServiceConfig config;
    httplib::Server server;
    std::mutex sessions_mu;
    std::unordered_map<std::string, std::shared_ptr<Session>> sessions;
    std::mt19937_64 id_rng{std::random_device{}()};
    int bound_port = -1;
    std::thread worker;

    explicit Impl(ServiceConfig c) : config(std::move(c)) { install_routes(); }

    std::shared_ptr<Session> find(const std::string& id) {
        std::lock_guard lock(sessions_mu);
        const auto it = sessions.find(id);
        return it == sessions.end() ? nullptr : it->second;
    }

    std::string new_id() {
        static constexpr char hex[] = "0123456789abcdef";
        std::string id;
        for (int word = 0; word < 2; ++word) {
            std::uint64_t v = id_rng();
            for (int i = 0; i < 16; ++i, v >>= 4) id.push_back(hex[v & 0xf]);
        }
        return id;
    }

    void create_session(const httplib::Request& req, httplib::Response& res) {
        Image image;
        try {
            image = decode_image({reinterpret_cast<const std::uint8_t*>(req.body.data()), req.body.size()},
                                 config.max_pixels);
        } catch (const ImageTooLargeError& e) {
            return send_error(res, 413, e.what());
        } catch (const Error& e) {
            return send_error(res, 422, e.what());
        }
        auto session = std::make_shared<Session>();
        session->image = std::make_shared<const Image>(std::move(image));
        {
            std::lock_guard lock(sessions_mu);
            do {
                session->id = new_id();
            } while (sessions.contains(session->id));
            sessions.emplace(session->id, session);
        }
        res.set_header("Location", "/sessions/" + session->id);
        res.set_header("ETag", "\"0\"");
        send_json(res, 201,
                  {{"id", session->id},
                   {"revision", 0},
                   {"width", session->image->width()},
                   {"height", session->image->height()}});
    }

    void put_scene(const httplib::Request& req, httplib::Response& res) {
        const auto session = find(req.matches[1]);
        if (!session) return send_error(res, 404, "no such session");
        if (!req.has_header("If-Match")) return send_error(res, 428, "If-Match revision header is required");
        const auto expected = parse_revision(req.get_header_value("If-Match"));
        if (!expected) return send_error(res, 400, "If-Match must be an integer revision");

        SceneSpec scene;
        try {
            scene = parse_scene(req.body);
            validate_scene_for_image(scene, session->image->width(), session->image->height());
        } catch (const ValidationError& e) {
            return send_error(res, 422, e.what(), e.field());
        } catch (const Error& e) {
            return send_error(res, 422, e.what());
        }

        std::lock_guard lock(session->mu);
        if (*expected != session->revision) {
            res.set_header("ETag", "\"" + std::to_string(session->revision) + "\"");
            return send_json(res, 409, {{"error", "revision mismatch"}, {"revision", session->revision}});
        }
        session->scene = std::move(scene);
        ++session->revision;
        res.set_header("ETag", "\"" + std::to_string(session->revision) + "\"");
        send_json(res, 200, {{"revision", session->revision}});
    }

    void render(const httplib::Request& req, httplib::Response& res) {
        const auto session = find(req.matches[1]);
        if (!session) return send_error(res, 404, "no such session");
        const auto stage = stage_param(req);
        if (!stage) return send_error(res, 422, "stage must be one of draw, filter, refine", "stage");

        std::shared_ptr<const Image> image;
        SceneSpec scene;
        std::uint64_t revision = 0;
        {
            std::lock_guard lock(session->mu);
            const auto cached = session->results.find(*stage);
            if (cached != session->results.end() && cached->second.revision == session->revision) {
                return set_render_headers(res, cached->second);
            }
            image = session->image;
            scene = session->scene;
            revision = session->revision;
        }

        CachedRender render;
        render.revision = revision;
        try {
            RenderOptions options;
            options.threads = config.render_threads;
            options.stage_limit = *stage;
            const RenderOutput out = run_pipeline(*image, scene, options);
            const auto png = encode_image(out.image, ImageFormat::png);
            render.png.assign(png.begin(), png.end());
            render.report = one_line(out.report.to_text());
        } catch (const PipelineError& e) {
            json body{{"error", e.what()}, {"patch", e.patch_index()}, {"stage", e.stage()}};
            return send_json(res, 500, body);
        } catch (const std::exception& e) {
            return send_error(res, 500, e.what());
        }

        {
            std::lock_guard lock(session->mu);
            CachedRender& slot = session->results[*stage];
            if (slot.png.empty() || slot.revision <= revision) slot = render;
        }
        set_render_headers(res, render);
    }

    void result(const httplib::Request& req, httplib::Response& res) {
        const auto session = find(req.matches[1]);
        if (!session) return send_error(res, 404, "no such session");
        const auto stage = stage_param(req);
        if (!stage) return send_error(res, 422, "stage must be one of draw, filter, refine", "stage");
        std::lock_guard lock(session->mu);
        const auto it = session->results.find(*stage);
        if (it == session->results.end()) return send_error(res, 404, "stage has not been rendered yet");
        set_render_headers(res, it->second);
    }

    void kernel_preview_endpoint(const httplib::Request& req, httplib::Response& res) {
        StreakKernelParams p;
        auto number = [&](const char* key, double& out) {
            if (!req.has_param(key)) return true;
            const std::string text = req.get_param_value(key);
            char* end = nullptr;
            const double v = std::strtod(text.c_str(), &end);
            if (text.empty() || end != text.c_str() + text.size()) {
                send_error(res, 422, std::string(key) + " must be a number", key);
                return false;
            }
            out = v;
            return true;
        };
        double size = p.size;
        if (!number("size", size) || !number("angle_deg", p.angle_deg) || !number("curvature", p.curvature) ||
            !number("thickness", p.thickness) || !number("sigma", p.falloff_sigma) || !number("sum", p.target_sum)) {
            return;
        }
        if (size != static_cast<double>(static_cast<int>(size))) {
            return send_error(res, 422, "size must be an integer", "size");
        }
        p.size = static_cast<int>(size);
        try {
            const auto png = encode_image(kernel_preview(make_streak_kernel(p), 8), ImageFormat::png);
            res.set_content(std::string(png.begin(), png.end()), "image/png");
        } catch (const ValidationError& e) {
            send_error(res, 422, e.what(), e.field());
        }
    }

    void install_routes() {
        server.set_payload_max_length(std::size_t{256} << 20);
        server.Post("/sessions", [this](const auto& req, auto& res) { create_session(req, res); });
        server.Put(R"(/sessions/([0-9a-f]+)/scene)", [this](const auto& req, auto& res) { put_scene(req, res); });
        server.Post(R"(/sessions/([0-9a-f]+)/render)", [this](const auto& req, auto& res) { render(req, res); });
        server.Get(R"(/sessions/([0-9a-f]+)/result)", [this](const auto& req, auto& res) { result(req, res); });
        server.Get("/kernel/preview", [this](const auto& req, auto& res) { kernel_preview_endpoint(req, res); });
        server.Get("/healthz", [](const auto&, auto& res) { send_json(res, 200, {{"status", "ok"}}); });
        if (!config.static_dir.empty() && std::filesystem::is_directory(config.static_dir)) {
            server.set_mount_point("/", config.static_dir);
        }
    }
};

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}

Service::~Service() { stop(); }

int Service::bind() {
    if (impl_->bound_port >= 0) return impl_->bound_port;
    const ServiceConfig& c = impl_->config;
    if (c.port == 0) {
        impl_->bound_port = impl_->server.bind_to_any_port(c.host);
    } else if (impl_->server.bind_to_port(c.host, c.port)) {
        impl_->bound_port = c.port;
    }
    if (impl_->bound_port < 0) {
        throw Error("cannot bind " + c.host + ":" + std::to_string(c.port));
    }
    return impl_->bound_port;
}

void Service::listen() {
    bind();
    impl_->server.listen_after_bind();
}

int Service::start() {
    const int port = bind();
    impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return port;
}

void Service::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->worker.joinable()) impl_->worker.join();
}

int Service::port() const noexcept { return impl_->bound_port; }

} // namespace hairsynth
