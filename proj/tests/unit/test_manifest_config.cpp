#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include "shapebag/config.hpp"
#include "shapebag/error.hpp"
#include "shapebag/manifest.hpp"

using namespace shapebag;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("shapebag_manifest_" + name);
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::string message_of(const std::function<void()>& f, ErrorCode expect) {
    try {
        f();
    } catch (const Error& e) {
        CHECK(e.code() == expect);
        return e.what();
    }
    FAIL("expected an Error");
    return "";
}

}  // namespace

TEST_CASE("manifest rows parse with comments, blanks, and relative paths") {
    const fs::path p = temp_file("basic.manifest");
    write_text(p,
               "# gallery listing\n"
               "obj001\t0deg\timages/a.pgm\tmasks/a.pgm\n"
               "\n"
               "obj002\t45deg\tb.pgm\tb_mask.pgm\n");
    const auto records = load_manifest(p);
    REQUIRE(records.size() == 2);
    CHECK(records[0].object_id == "obj001");
    CHECK(records[0].view_label == "0deg");
    CHECK(records[0].image_path == p.parent_path() / "images/a.pgm");
    CHECK(records[0].mask_path == p.parent_path() / "masks/a.pgm");
    CHECK(records[1].object_id == "obj002");
    CHECK(records[1].image_path == p.parent_path() / "b.pgm");
    fs::remove(p);
}

TEST_CASE("manifest accepts CRLF line endings") {
    const fs::path p = temp_file("crlf.manifest");
    write_text(p, "obj001\tfront\ta.pgm\tm.pgm\r\nobj002\tback\tb.pgm\tn.pgm\r\n");
    const auto records = load_manifest(p);
    REQUIRE(records.size() == 2);
    CHECK(records[1].view_label == "back");
    fs::remove(p);
}

TEST_CASE("malformed manifest rows report file and line") {
    const fs::path p = temp_file("bad.manifest");
    write_text(p, "obj001\tfront\ta.pgm\tm.pgm\nobj002\tonly_three\tfields\n");
    const std::string msg =
        message_of([&] { (void)load_manifest(p); }, ErrorCode::dataset);
    CHECK(msg.find(p.string() + ":2") != std::string::npos);
    CHECK(msg.find("4 tab-separated fields") != std::string::npos);

    write_text(p, "obj001\t\ta.pgm\tm.pgm\n");
    const std::string msg2 =
        message_of([&] { (void)load_manifest(p); }, ErrorCode::dataset);
    CHECK(msg2.find(":1") != std::string::npos);
    CHECK(msg2.find("empty field") != std::string::npos);
    fs::remove(p);
}

TEST_CASE("an empty manifest is an error unless explicitly allowed") {
    const fs::path p = temp_file("empty.manifest");
    write_text(p, "# nothing here\n\n");
    CHECK_THROWS_AS((void)load_manifest(p), Error);
    CHECK(load_manifest(p, true).empty());
    fs::remove(p);
}

TEST_CASE("a missing manifest file is a dataset error") {
    const fs::path p = temp_file("does_not_exist.manifest");
    fs::remove(p);
    (void)message_of([&] { (void)load_manifest(p); }, ErrorCode::dataset);
}

TEST_CASE("manifest digest tracks file content") {
    const fs::path a = temp_file("dig_a.manifest");
    const fs::path b = temp_file("dig_b.manifest");
    write_text(a, "obj001\tfront\ta.pgm\tm.pgm\n");
    write_text(b, "obj001\tfront\ta.pgm\tm.pgm\n");
    CHECK(manifest_digest(a) == manifest_digest(a));
    CHECK(manifest_digest(a) == manifest_digest(b));
    write_text(b, "obj001\tfront\ta.pgm\tm2.pgm\n");
    CHECK(manifest_digest(a) != manifest_digest(b));
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("default config validates") {
    RunConfig cfg;
    CHECK_NOTHROW(validate_config(cfg));
    CHECK(cfg.texture_vocab_size == 5000);
    CHECK(cfg.shape_vocab_size == 3000);
    CHECK(cfg.seed == 42);
}

TEST_CASE("config text overrides named keys") {
    RunConfig cfg;
    apply_config_text(cfg,
                      "# tuning\n"
                      "kernel_sigma = 3.5\n"
                      "texture_vocab_size=250\n"
                      "  fusion_objective =  margin \n"
                      "seed = 7\n",
                      "inline");
    CHECK(cfg.kernel_sigma == 3.5);
    CHECK(cfg.texture_vocab_size == 250);
    CHECK(cfg.fusion_objective == "margin");
    CHECK(cfg.seed == 7);
    RunConfig untouched;
    CHECK(cfg.contour_octaves == untouched.contour_octaves);
}

TEST_CASE("unknown keys and bad values are usage errors with positions") {
    RunConfig cfg;
    const std::string msg = message_of(
        [&] { apply_config_text(cfg, "no_such_key = 1\n", "mem"); }, ErrorCode::usage);
    CHECK(msg.find("mem:1") != std::string::npos);
    CHECK(msg.find("no_such_key") != std::string::npos);

    const std::string msg2 = message_of(
        [&] { apply_config_text(cfg, "\n\nthis has no equals sign\n", "mem"); },
        ErrorCode::usage);
    CHECK(msg2.find("mem:3") != std::string::npos);

    const std::string msg3 = message_of(
        [&] { apply_config_text(cfg, "bon_samples = eleven\n", "mem"); }, ErrorCode::usage);
    CHECK(msg3.find("bon_samples") != std::string::npos);
    CHECK(msg3.find("eleven") != std::string::npos);
}

TEST_CASE("config files parse like config text") {
    const fs::path p = temp_file("run.cfg");
    write_text(p, "dog_threshold = 0.07\nthreads = 2\n");
    RunConfig cfg;
    apply_config_file(cfg, p);
    CHECK(cfg.dog_threshold == 0.07);
    CHECK(cfg.threads == 2);
    fs::remove(p);
    (void)message_of([&] { apply_config_file(cfg, p); }, ErrorCode::usage);
}

TEST_CASE("environment variables override fields") {
    setenv("SHAPEBAG_SHAPE_VOCAB_SIZE", "123", 1);
    setenv("SHAPEBAG_WARP_MAGNITUDE", "0.12", 1);
    RunConfig cfg;
    apply_env_overrides(cfg);
    unsetenv("SHAPEBAG_SHAPE_VOCAB_SIZE");
    unsetenv("SHAPEBAG_WARP_MAGNITUDE");
    CHECK(cfg.shape_vocab_size == 123);
    CHECK(cfg.warp_magnitude == 0.12);

    setenv("SHAPEBAG_KMEANS_MAX_ITERS", "not_a_number", 1);
    RunConfig cfg2;
    const std::string msg =
        message_of([&] { apply_env_overrides(cfg2); }, ErrorCode::usage);
    unsetenv("SHAPEBAG_KMEANS_MAX_ITERS");
    CHECK(msg.find("kmeans_max_iters") != std::string::npos);
}

TEST_CASE("validation flags each out-of-range field by name") {
    const auto expect_bad = [](void (*mutate)(RunConfig&), const char* key) {
        RunConfig cfg;
        mutate(cfg);
        const std::string msg =
            message_of([&] { validate_config(cfg); }, ErrorCode::usage);
        CHECK(msg.find(key) != std::string::npos);
    };
    expect_bad([](RunConfig& c) { c.kernel_sigma = -1.0; }, "kernel_sigma");
    expect_bad([](RunConfig& c) { c.contour_octaves = 0; }, "contour_octaves");
    expect_bad([](RunConfig& c) { c.min_contour_length = 2; }, "min_contour_length");
    expect_bad([](RunConfig& c) { c.bon_samples = 1; }, "bon_samples");
    expect_bad([](RunConfig& c) { c.texture_vocab_size = 0; }, "texture_vocab_size");
    expect_bad([](RunConfig& c) { c.mask_threshold = 1.0; }, "mask_threshold");
    expect_bad([](RunConfig& c) { c.warps_per_image = 0; }, "warps_per_image");
    expect_bad([](RunConfig& c) { c.warp_magnitude = 0.4; }, "warp_magnitude");
    expect_bad([](RunConfig& c) { c.threads = -1; }, "threads");

    RunConfig cfg;
    cfg.fusion_grid_step = 0.3;
    CHECK_THROWS_AS(validate_config(cfg), Error);
    cfg = RunConfig{};
    cfg.fusion_objective = "vibes";
    CHECK_THROWS_AS(validate_config(cfg), Error);
}

TEST_CASE("serialized config lists every key once in fixed order and round trips") {
    RunConfig cfg;
    cfg.kernel_sigma = 1.75;
    cfg.seed = 991;
    const std::string text = serialize_config(cfg);
    CHECK(text.rfind("kernel_sigma = ", 0) == 0);
    for (const char* key :
         {"kernel_sigma", "contour_octaves", "min_abs_curvature", "min_contour_length",
          "bon_samples", "bon_span", "dog_octaves", "dog_levels_per_octave", "dog_threshold",
          "texture_vocab_size", "shape_vocab_size", "kmeans_max_iters", "mask_threshold",
          "warps_per_image", "warp_magnitude", "fusion_grid_step", "fusion_objective", "seed",
          "threads"}) {
        const std::string needle = std::string(key) + " = ";
        const size_t first = text.find(needle);
        REQUIRE(first != std::string::npos);
        CHECK(text.find(needle, first + 1) == std::string::npos);
    }
    RunConfig back;  // defaults differ in the two fields above
    apply_config_text(back, text, "roundtrip");
    CHECK(back == cfg);
    CHECK(serialize_config(back) == text);
}

TEST_CASE("config digest is a stable 16-digit fingerprint") {
    RunConfig cfg;
    const std::string d = config_digest(cfg);
    REQUIRE(d.size() == 16);
    for (char c : d) CHECK(std::string("0123456789abcdef").find(c) != std::string::npos);
    CHECK(config_digest(cfg) == d);
    cfg.seed = 43;
    CHECK(config_digest(cfg) != d);
}
