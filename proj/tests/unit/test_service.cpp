#include <doctest.h>

#include "fixtures.hpp"

#include <hairsynth/codec.hpp>
#include <hairsynth/kernel.hpp>
#include <hairsynth/pipeline.hpp>
#include <hairsynth/service.hpp>

#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <thread>

using namespace hairsynth;
using json = nlohmann::json;

namespace {

struct Running {
    Service service;
    httplib::Client client;

    explicit Running(ServiceConfig config = make_config())
        : service(std::move(config)), client("127.0.0.1", service.start()) {
        client.set_read_timeout(60, 0);
    }

    static ServiceConfig make_config() {
        ServiceConfig c;
        c.port = 0;
        return c;
    }

    std::string create(const Image& img) {
        const auto png = encode_image(img, ImageFormat::png);
        const auto res = client.Post("/sessions", std::string(png.begin(), png.end()), "image/png");
        REQUIRE(res);
        REQUIRE(res->status == 201);
        return json::parse(res->body).at("id").get<std::string>();
    }

    httplib::Result put(const std::string& id, const std::string& scene, std::uint64_t revision) {
        return client.Put("/sessions/" + id + "/scene", {{"If-Match", std::to_string(revision)}}, scene,
                          "application/json");
    }
};

std::string bytes_string(const std::vector<std::uint8_t>& b) { return {b.begin(), b.end()}; }

const char* kScene = R"({"image": "portrait.png", "seed": 99, "patches": [
  {"polygon": [[10,10],[70,12],[60,60],[12,55]], "strokes": {"density": 20},
   "kernel": {"size": 9, "angle_deg": 80, "curvature": 0, "thickness": 1, "sigma": 3}}]})";

} // namespace

TEST_CASE("port resolution") {
    ::unsetenv("HAIRSYNTH_PORT");
    CHECK(resolve_port(std::nullopt) == 8080);
    CHECK(resolve_port(9000) == 9000);
    ::setenv("HAIRSYNTH_PORT", "9123", 1);
    CHECK(resolve_port(std::nullopt) == 9123);
    CHECK(resolve_port(9000) == 9000);
    ::setenv("HAIRSYNTH_PORT", "junk", 1);
    CHECK(resolve_port(std::nullopt) == 8080);
    ::unsetenv("HAIRSYNTH_PORT");
}

TEST_CASE("sessions") {
    Running s;
    SplitMix64 rng(80);
    const Image img = fixtures::random_image(80, 80, rng);

    SUBCASE("create") {
        const auto a = s.create(img);
        const auto b = s.create(img);
        CHECK(a != b);
        CHECK(a.size() == 32);

        const auto big = s.client.Post("/sessions", bytes_string(encode_image(Image(512, 512), ImageFormat::png)),
                                       "image/png");
        REQUIRE(big);
        CHECK(big->status == 201);
        CHECK(json::parse(big->body).at("width") == 512);
        CHECK(json::parse(big->body).at("revision") == 0);

        const auto bad = s.client.Post("/sessions", "x", "application/octet-stream");
        REQUIRE(bad);
        CHECK(bad->status == 422);
        CHECK(json::parse(bad->body).contains("error"));
    }
    SUBCASE("size limit") {
        ServiceConfig c = Running::make_config();
        c.max_pixels = 100;
        Running small(c);
        const auto res = small.client.Post("/sessions", bytes_string(encode_image(Image(11, 10), ImageFormat::png)),
                                           "image/png");
        REQUIRE(res);
        CHECK(res->status == 413);
    }
    SUBCASE("scene updates and revisions") {
        const auto id = s.create(img);
        auto res = s.put(id, kScene, 0);
        REQUIRE(res);
        CHECK(res->status == 200);
        CHECK(json::parse(res->body).at("revision") == 1);
        CHECK(res->get_header_value("ETag") == "\"1\"");

        res = s.put(id, kScene, 0);
        REQUIRE(res);
        CHECK(res->status == 409);
        CHECK(json::parse(res->body).at("revision") == 1);

        std::string bad = kScene;
        bad.replace(bad.find("\"size\": 9"), 9, "\"size\": 20");
        res = s.put(id, bad, 1);
        REQUIRE(res);
        CHECK(res->status == 422);
        CHECK(json::parse(res->body).at("field") == "patches[0].kernel.size");

        res = s.put(id, R"({"image": "a", "patches": [{"polygon": [[500,500],[600,500],[600,600]]}]})", 1);
        REQUIRE(res);
        CHECK(res->status == 422);
        CHECK(json::parse(res->body).at("field") == "patches[0].polygon");

        res = s.put(id, "{", 1);
        REQUIRE(res);
        CHECK(res->status == 422);

        res = s.put("00000000000000000000000000000000", kScene, 0);
        REQUIRE(res);
        CHECK(res->status == 404);

        res = s.client.Put("/sessions/" + id + "/scene", kScene, "application/json");
        REQUIRE(res);
        CHECK(res->status == 428);

        res = s.client.Put("/sessions/" + id + "/scene", {{"If-Match", "x1"}}, kScene, "application/json");
        REQUIRE(res);
        CHECK(res->status == 400);

        res = s.client.Put("/sessions/" + id + "/scene", {{"If-Match", "\"1\""}}, kScene, "application/json");
        REQUIRE(res);
        CHECK(res->status == 200);
        CHECK(json::parse(res->body).at("revision") == 2);
    }
    SUBCASE("rendering") {
        const auto id = s.create(img);
        auto res = s.client.Post("/sessions/" + id + "/render?stage=draw", "", "text/plain");
        REQUIRE(res);
        CHECK(res->status == 200);
        CHECK(res->body == bytes_string(encode_image(img, ImageFormat::png)));
        CHECK(res->get_header_value("X-Scene-Revision") == "0");

        REQUIRE(s.put(id, kScene, 0)->status == 200);
        const SceneSpec scene = parse_scene(kScene);
        for (Stage stage : {Stage::draw, Stage::filter, Stage::refine}) {
            const std::string path = "/sessions/" + id + "/render?stage=" + std::string(to_string(stage));
            const auto first = s.client.Post(path, "", "text/plain");
            const auto second = s.client.Post(path, "", "text/plain");
            REQUIRE(first);
            REQUIRE(second);
            CHECK(first->status == 200);
            CHECK(first->body == second->body);
            CHECK(first->get_header_value("X-Scene-Revision") == "1");
            const RenderOutput local = run_pipeline(decode_image(encode_image(img, ImageFormat::png)), scene, {1, stage});
            CHECK(first->body == bytes_string(encode_image(local.image, ImageFormat::png)));
            CHECK(first->get_header_value("X-Render-Report").find("checksum=" + format_checksum(local.report.checksum)) !=
                  std::string::npos);

            const auto stored = s.client.Get("/sessions/" + id + "/result?stage=" + std::string(to_string(stage)));
            REQUIRE(stored);
            CHECK(stored->status == 200);
            CHECK(stored->body == first->body);
        }
        // Rendering changes neither the scene nor its revision.
        auto again = s.put(id, kScene, 1);
        REQUIRE(again);
        CHECK(again->status == 200);

        res = s.client.Post("/sessions/" + id + "/render?stage=paint", "", "text/plain");
        REQUIRE(res);
        CHECK(res->status == 422);
        res = s.client.Post("/sessions/ffffffffffffffffffffffffffffffff/render", "", "text/plain");
        REQUIRE(res);
        CHECK(res->status == 404);
        const auto fresh = s.create(img);
        res = s.client.Get("/sessions/" + fresh + "/result?stage=refine");
        REQUIRE(res);
        CHECK(res->status == 404);
    }
    SUBCASE("concurrent writers get exactly one winner per revision") {
        const auto id = s.create(img);
        std::string other = kScene;
        other.replace(other.find("\"seed\": 99"), 10, "\"seed\": 42");
        std::atomic<int> ok{0}, conflict{0};
        std::vector<std::thread> writers;
        for (int i = 0; i < 8; ++i) {
            writers.emplace_back([&, i] {
                httplib::Client c("127.0.0.1", s.service.port());
                const auto r = c.Put("/sessions/" + id + "/scene", {{"If-Match", "0"}}, i % 2 ? kScene : other,
                                     "application/json");
                if (r && r->status == 200) ++ok;
                if (r && r->status == 409) ++conflict;
            });
        }
        for (auto& t : writers) t.join();
        CHECK(ok == 1);
        CHECK(conflict == 7);
    }
}

TEST_CASE("kernel preview endpoint") {
    Running s;
    auto fetch = [&](const std::string& query) { return s.client.Get("/kernel/preview?" + query); };

    const auto res = fetch("size=19&angle_deg=0&curvature=0&thickness=1&sigma=6");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->get_header_value("Content-Type") == "image/png");
    const Image got = decode_image({reinterpret_cast<const std::uint8_t*>(res->body.data()), res->body.size()});
    CHECK(got.width() == 19 * 8);
    const Image want = kernel_preview(make_streak_kernel({19, 0.0, 0.0, 1.0, 6.0, 1.0}), 8);
    CHECK(res->body == bytes_string(encode_image(want, ImageFormat::png)));
    for (int r = 0; r < 19; ++r) {
        // Straight horizontal streak: only the center row is red.
        CHECK((got.pixel(4, r * 8 + 4) != Color{1, 1, 1, 1}) == (r == 9));
    }

    const auto r31 = fetch("size=31&angle_deg=20");
    REQUIRE(r31);
    CHECK(r31->status == 200);
    CHECK(r31->body != res->body);

    for (const char* bad : {"size=20", "size=abc", "thickness=0.1", "sigma=0", "size=19.5"}) {
        const auto r = fetch(bad);
        REQUIRE(r);
        CHECK(r->status == 422);
        CHECK(json::parse(r->body).contains("field"));
    }
    const auto health = s.client.Get("/healthz");
    REQUIRE(health);
    CHECK(health->status == 200);
}
