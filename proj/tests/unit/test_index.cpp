#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "shapebag/crc32c.hpp"
#include "shapebag/error.hpp"
#include "shapebag/index.hpp"
#include "shapebag/synth.hpp"

using namespace shapebag;
namespace fs = std::filesystem;

namespace {

struct BuiltFixture {
    fs::path dir;
    SynthResult synth;
    RunConfig cfg;
    Index index;
    std::vector<DatasetRecord> gallery;

    BuiltFixture() {
        dir = fs::temp_directory_path() / "shapebag_index_test";
        fs::remove_all(dir);
        SynthOptions opt;
        opt.n_objects = 6;
        opt.seed = 19;
        opt.views_per_magnitude = 1;
        synth = generate_synthetic_dataset(dir, opt);
        cfg.texture_vocab_size = 40;
        cfg.shape_vocab_size = 25;
        cfg.warps_per_image = 2;
        cfg.seed = 19;
        index = build_index(synth.gallery_manifest, cfg);
        gallery = load_manifest(synth.gallery_manifest);
        std::sort(gallery.begin(), gallery.end(),
                  [](const DatasetRecord& a, const DatasetRecord& b) {
                      return a.object_id < b.object_id;
                  });
    }
    ~BuiltFixture() { fs::remove_all(dir); }
};

// Built once; index construction dominates this file's runtime.
const BuiltFixture& built() {
    static BuiltFixture f;
    return f;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::internal;
}

}  // namespace

TEST_CASE("built index holds one sorted signature per object") {
    const auto& f = built();
    REQUIRE(f.index.signatures.size() == 6);
    for (size_t i = 1; i < f.index.signatures.size(); ++i)
        CHECK(f.index.signatures[i - 1].object_id < f.index.signatures[i].object_id);
    for (const ObjectSignature& sig : f.index.signatures) {
        CHECK(sig.texture_hist.normalized);
        CHECK(sig.shape_hist.normalized);
        CHECK(sig.texture_hist.values.size() == 40);
        CHECK(sig.shape_hist.values.size() == 25);
    }
    CHECK(f.index.tool_version == kToolVersion);
    CHECK(f.index.dataset_digest == manifest_digest(f.synth.gallery_manifest));
    CHECK(f.index.build_config() == f.cfg);
    CHECK(f.index.fusion.grid.size() == 21);
}

TEST_CASE("gallery images retrieve themselves at distance zero") {
    const auto& f = built();
    const DatasetRecord& r = f.gallery[2];
    const GrayImage img = load_image(r.image_path);
    const BinaryMask mask = load_mask(r.mask_path);
    const auto results = query(f.index, img, mask, f.index.signatures.size());
    REQUIRE(!results.empty());
    CHECK(results[0].object_id == r.object_id);
    CHECK(results[0].distance == 0.0);
    CHECK(results[0].dt == 0.0);
    CHECK(results[0].ds == 0.0);
    for (size_t i = 1; i < results.size(); ++i)
        CHECK(results[i].distance >= results[i - 1].distance);
}

TEST_CASE("top_k truncates the ranked list without reordering") {
    const auto& f = built();
    const DatasetRecord& r = f.gallery[0];
    const GrayImage img = load_image(r.image_path);
    const BinaryMask mask = load_mask(r.mask_path);
    const auto full = query(f.index, img, mask, 100);
    REQUIRE(full.size() == 6);
    const auto top3 = query(f.index, img, mask, 3);
    REQUIRE(top3.size() == 3);
    for (size_t i = 0; i < 3; ++i) CHECK(top3[i].object_id == full[i].object_id);
}

TEST_CASE("exact ties rank by object id") {
    const auto& f = built();
    Index twin = f.index;
    ObjectSignature after = twin.signatures[0];
    after.object_id = "zzz_twin";
    ObjectSignature before = twin.signatures[0];
    before.object_id = "aaa_twin";
    twin.signatures.push_back(after);
    twin.signatures.push_back(before);

    const DatasetRecord& r = f.gallery[0];
    const GrayImage img = load_image(r.image_path);
    const BinaryMask mask = load_mask(r.mask_path);
    const auto results = query(twin, img, mask, twin.signatures.size());
    REQUIRE(results.size() == 8);
    // all three share identical histograms -> identical distances
    CHECK(results[0].object_id == "aaa_twin");
    CHECK(results[1].object_id == f.index.signatures[0].object_id);
    CHECK(results[2].object_id == "zzz_twin");
    CHECK(results[0].distance == results[2].distance);
}

TEST_CASE("weight overrides reduce the ranking to one channel") {
    const auto& f = built();
    const DatasetRecord& r = f.gallery[4];
    const GrayImage img = load_image(r.image_path);
    const BinaryMask mask = load_mask(r.mask_path);

    const auto texture_only = query(f.index, img, mask, 6, 0.0);
    for (const QueryResult& q : texture_only) CHECK(q.distance == q.dt);
    for (size_t i = 1; i < texture_only.size(); ++i) {
        const auto& a = texture_only[i - 1];
        const auto& b = texture_only[i];
        CHECK((a.dt < b.dt || (a.dt == b.dt && a.object_id < b.object_id)));
    }

    const auto shape_only = query(f.index, img, mask, 6, 1.0);
    for (const QueryResult& q : shape_only) CHECK(q.distance == q.ds);
    for (size_t i = 1; i < shape_only.size(); ++i)
        CHECK(shape_only[i].ds >= shape_only[i - 1].ds);

    CHECK(code_of([&] { (void)query(f.index, img, mask, 6, 1.5); }) == ErrorCode::usage);
}

TEST_CASE("querying an empty index is an index error") {
    Index empty;
    GrayImage img(8, 8);
    BinaryMask mask(8, 8, true);
    CHECK(code_of([&] { (void)query(empty, img, mask, 1); }) == ErrorCode::index);
}

TEST_CASE("duplicate object ids in the gallery manifest are rejected") {
    const auto& f = built();
    const fs::path dup = f.dir / "dup.manifest";
    {
        std::ifstream in(f.synth.gallery_manifest);
        std::ofstream out(dup);
        std::string line, first;
        while (std::getline(in, line)) {
            if (first.empty() && !line.empty() && line[0] != '#') first = line;
            out << line << "\n";
        }
        out << first << "\n";
    }
    const auto code = code_of([&] { (void)build_index(dup, f.cfg); });
    CHECK(code == ErrorCode::dataset);
    fs::remove(dup);
}

TEST_CASE("a one-object gallery is rejected") {
    const auto& f = built();
    const fs::path single = f.dir / "single.manifest";
    {
        std::ifstream in(f.synth.gallery_manifest);
        std::ofstream out(single);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty() && line[0] != '#') {
                out << line << "\n";
                break;
            }
    }
    CHECK(code_of([&] { (void)build_index(single, f.cfg); }) == ErrorCode::dataset);
    fs::remove(single);
}

TEST_CASE("evaluating the gallery against itself is a perfect run") {
    const auto& f = built();
    const RankReport report = evaluate(f.index, f.gallery, {1, 2}, 1);
    REQUIRE(report.per_query.size() == f.gallery.size());
    for (const ProbeOutcome& out : report.per_query) {
        CHECK(out.rank_fused == 1);
        CHECK(out.rank_texture == 1);
        CHECK(out.rank_shape == 1);
    }
    for (const auto& row : report.rows) {
        CHECK(row.rate_fused == 1.0);
        CHECK(row.rate_texture == 1.0);
        CHECK(row.rate_shape == 1.0);
    }
}

TEST_CASE("probe ranks match an independent recount") {
    const auto& f = built();
    const std::vector<DatasetRecord> probes = load_manifest(f.synth.probe_manifest);
    const std::vector<DatasetRecord> subset(probes.begin(),
                                            probes.begin() + std::min<size_t>(4, probes.size()));
    const RankReport report = evaluate(f.index, subset, {1, 3, 6}, 1);
    REQUIRE(report.per_query.size() == subset.size());

    for (size_t i = 0; i < subset.size(); ++i) {
        const GrayImage img = load_image(subset[i].image_path);
        const BinaryMask mask = load_mask(subset[i].mask_path);
        const auto ranked = query(f.index, img, mask, f.index.signatures.size());
        double own = 0.0;
        for (const QueryResult& q : ranked)
            if (q.object_id == subset[i].object_id) own = q.distance;
        int rank = 1;
        for (const QueryResult& q : ranked)
            if (q.object_id != subset[i].object_id && q.distance < own) ++rank;
        CHECK(report.per_query[i].rank_fused == rank);
        CHECK(report.per_query[i].object_id == subset[i].object_id);
    }

    // per view label, recognition rates cannot drop as N grows
    for (size_t i = 1; i < report.rows.size(); ++i)
        if (report.rows[i].view_label == report.rows[i - 1].view_label) {
            CHECK(report.rows[i].n > report.rows[i - 1].n);
            CHECK(report.rows[i].rate_fused >= report.rows[i - 1].rate_fused);
            CHECK(report.rows[i].rate_texture >= report.rows[i - 1].rate_texture);
            CHECK(report.rows[i].rate_shape >= report.rows[i - 1].rate_shape);
        }
}

TEST_CASE("evaluate validates probes and thresholds") {
    const auto& f = built();
    CHECK(code_of([&] { (void)evaluate(f.index, {}, {1}); }) == ErrorCode::probe);
    std::vector<DatasetRecord> stranger = {f.gallery[0]};
    stranger[0].object_id = "not_in_gallery";
    CHECK(code_of([&] { (void)evaluate(f.index, stranger, {1}); }) == ErrorCode::probe);
    CHECK(code_of([&] { (void)evaluate(f.index, f.gallery, {}); }) == ErrorCode::usage);
}

TEST_CASE("index files round trip byte-for-byte") {
    const auto& f = built();
    const std::string bytes = serialize_index(f.index);
    const Index back = deserialize_index(bytes);
    CHECK(back == f.index);
    CHECK(serialize_index(back) == bytes);

    const fs::path p = f.dir / "roundtrip.sbix";
    save_index(f.index, p);
    const Index loaded = load_index(p);
    CHECK(loaded == f.index);
    fs::remove(p);
}

TEST_CASE("corruption, truncation, and version skew are index errors") {
    const auto& f = built();
    const std::string bytes = serialize_index(f.index);

    std::string flipped = bytes;
    flipped[flipped.size() / 2] ^= 0x20;
    const std::string msg = [&] {
        try {
            (void)deserialize_index(flipped);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::index);
            return std::string(e.what());
        }
        return std::string();
    }();
    CHECK(msg.find("checksum") != std::string::npos);

    CHECK(code_of([&] { (void)deserialize_index(bytes.substr(0, 20)); }) == ErrorCode::index);
    CHECK(code_of([&] { (void)deserialize_index("not even close"); }) == ErrorCode::index);

    std::string wrong_magic = bytes;
    wrong_magic[0] = 'X';
    CHECK(code_of([&] { (void)deserialize_index(wrong_magic); }) == ErrorCode::index);

    // bump the version field and re-sign so the checksum passes
    std::string future = bytes.substr(0, bytes.size() - 4);
    future[4] = static_cast<char>(future[4] + 1);
    const uint32_t crc = crc32c(future.data(), future.size());
    for (int i = 0; i < 4; ++i)
        future.push_back(static_cast<char>((crc >> (8 * i)) & 0xff));
    const std::string vmsg = [&] {
        try {
            (void)deserialize_index(future);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::index);
            return std::string(e.what());
        }
        return std::string();
    }();
    CHECK(vmsg.find("version") != std::string::npos);
}
