#include "shapebag/index.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "shapebag/binary_io.hpp"
#include "shapebag/crc32c.hpp"
#include "shapebag/digest.hpp"
#include "shapebag/error.hpp"
#include "shapebag/parallel.hpp"
#include "shapebag/pipeline.hpp"
#include "shapebag/rng.hpp"
#include "shapebag/warp.hpp"

namespace shapebag {

namespace {

constexpr uint32_t kIndexVersion = 1;
constexpr char kIndexMagic[5] = "SBIX";

struct LoadedObject {
    DatasetRecord record;
    GrayImage image;
    BinaryMask mask;
    ObjectFeatures features;
};

SignaturePair make_signature_pair(const ObjectFeatures& f, const Vocabulary& tv,
                                  const Vocabulary& sv, const IdfModel& ti, const IdfModel& si) {
    SignaturePair p;
    p.texture = apply_tfidf(build_histogram(tv, f.texture_vectors()), ti);
    p.shape = apply_tfidf(build_histogram(sv, f.shape_vectors()), si);
    return p;
}

}  // namespace

RunConfig Index::build_config() const {
    RunConfig cfg;
    apply_config_text(cfg, parameter_block, "index parameter block");
    return cfg;
}

Index build_index(const std::filesystem::path& manifest_path, const RunConfig& cfg) {
    validate_config(cfg);
    std::vector<DatasetRecord> records = load_manifest(manifest_path);
    if (records.size() < 2) throw Error(ErrorCode::dataset, "gallery needs at least 2 objects");

    // One signature per object: the single-training-view protocol.
    std::sort(records.begin(), records.end(),
              [](const DatasetRecord& a, const DatasetRecord& b) { return a.object_id < b.object_id; });
    for (size_t i = 1; i < records.size(); ++i)
        if (records[i].object_id == records[i - 1].object_id)
            throw Error(ErrorCode::dataset, "duplicate object_id '" + records[i].object_id + "'");

    std::vector<LoadedObject> objects(records.size());
    parallel_for(records.size(), cfg.threads, [&](size_t i) {
        objects[i].record = records[i];
        objects[i].image = load_image(records[i].image_path);
        objects[i].mask = load_mask(records[i].mask_path);
        objects[i].features = extract_features(objects[i].image, objects[i].mask, cfg);
    });

    std::vector<std::vector<double>> texture_pool, shape_pool;
    for (const LoadedObject& o : objects) {
        for (const auto& d : o.features.texture_descriptors) texture_pool.push_back(d.values);
        for (const auto& d : o.features.shape_descriptors) shape_pool.push_back(d.values);
    }

    Index index;
    index.texture_vocab =
        train_vocabulary(texture_pool, Modality::texture, static_cast<uint32_t>(cfg.texture_vocab_size),
                         derive_seed(cfg.seed, 1), cfg.kmeans_max_iters, cfg.threads);
    index.shape_vocab =
        train_vocabulary(shape_pool, Modality::shape, static_cast<uint32_t>(cfg.shape_vocab_size),
                         derive_seed(cfg.seed, 2), cfg.kmeans_max_iters, cfg.threads);

    std::vector<WordHistogram> texture_raw, shape_raw;
    for (const LoadedObject& o : objects) {
        texture_raw.push_back(build_histogram(index.texture_vocab, o.features.texture_vectors()));
        shape_raw.push_back(build_histogram(index.shape_vocab, o.features.shape_vectors()));
    }
    index.texture_idf = fit_idf(texture_raw);
    index.shape_idf = fit_idf(shape_raw);

    std::vector<SignaturePair> gallery(objects.size());
    for (size_t i = 0; i < objects.size(); ++i) {
        gallery[i].texture = apply_tfidf(texture_raw[i], index.texture_idf);
        gallery[i].shape = apply_tfidf(shape_raw[i], index.shape_idf);

        ObjectSignature sig;
        sig.object_id = objects[i].record.object_id;
        sig.view_label = objects[i].record.view_label;
        sig.texture_hist = gallery[i].texture;
        sig.shape_hist = gallery[i].shape;
        sig.n_texture_descriptors = objects[i].features.texture_descriptors.size();
        sig.n_shape_descriptors = objects[i].features.shape_descriptors.size();
        index.signatures.push_back(std::move(sig));
    }

    // Warped pseudo-views drive the fusion weight search. Each object owns an
    // RNG stream derived from its id, so results are order- and thread-count
    // independent.
    std::vector<std::vector<SignaturePair>> warped(objects.size());
    parallel_for(objects.size(), cfg.threads, [&](size_t i) {
        std::mt19937_64 rng(derive_seed(cfg.seed, fnv1a64(objects[i].record.object_id)));
        warped[i].reserve(static_cast<size_t>(cfg.warps_per_image));
        for (int w = 0; w < cfg.warps_per_image; ++w) {
            const AffineWarp warp = random_warp(cfg.warp_magnitude, rng);
            const GrayImage wimg = warp_image(objects[i].image, warp);
            const BinaryMask wmask = warp_mask(objects[i].mask, warp);
            const ObjectFeatures wf = extract_features(wimg, wmask, cfg);
            warped[i].push_back(make_signature_pair(wf, index.texture_vocab, index.shape_vocab,
                                                    index.texture_idf, index.shape_idf));
        }
    });

    index.fusion = learn_weight(gallery, warped, cfg.fusion_grid_step,
                                fusion_objective_from_name(cfg.fusion_objective),
                                cfg.warps_per_image, cfg.warp_magnitude, cfg.seed);
    index.dataset_digest = manifest_digest(manifest_path);
    index.parameter_block = serialize_config(cfg);
    index.tool_version = kToolVersion;
    return index;
}

SignaturePair signature_for_image(const Index& index, const GrayImage& img,
                                  const BinaryMask& mask) {
    const RunConfig cfg = index.build_config();
    const ObjectFeatures f = extract_features(img, mask, cfg);
    return make_signature_pair(f, index.texture_vocab, index.shape_vocab, index.texture_idf,
                               index.shape_idf);
}

std::vector<QueryResult> query(const Index& index, const GrayImage& img, const BinaryMask& mask,
                               size_t top_k, std::optional<double> w_override) {
    if (index.signatures.empty()) throw Error(ErrorCode::index, "index has no signatures");
    const double w = w_override.value_or(index.fusion.w);
    const SignaturePair probe = signature_for_image(index, img, mask);

    std::vector<QueryResult> results;
    results.reserve(index.signatures.size());
    for (const ObjectSignature& sig : index.signatures) {
        QueryResult r;
        r.object_id = sig.object_id;
        r.dt = histogram_distance(probe.texture, sig.texture_hist);
        r.ds = histogram_distance(probe.shape, sig.shape_hist);
        r.distance = fused_distance(r.dt, r.ds, w);
        results.push_back(std::move(r));
    }
    std::sort(results.begin(), results.end(), [](const QueryResult& a, const QueryResult& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.object_id < b.object_id;
    });
    if (results.size() > top_k) results.resize(top_k);
    return results;
}

RankReport evaluate(const Index& index, const std::vector<DatasetRecord>& probes,
                    const std::vector<int>& rank_thresholds, int threads) {
    if (probes.empty()) throw Error(ErrorCode::probe, "empty probe set");
    if (rank_thresholds.empty()) throw_usage("need at least one rank threshold");

    std::set<std::string> gallery_ids;
    for (const ObjectSignature& sig : index.signatures) gallery_ids.insert(sig.object_id);
    for (const DatasetRecord& p : probes)
        if (!gallery_ids.count(p.object_id))
            throw Error(ErrorCode::probe, "probe object '" + p.object_id + "' not in the gallery");

    const RunConfig cfg = index.build_config();
    const double w = index.fusion.w;

    RankReport report;
    report.rank_thresholds = rank_thresholds;
    report.per_query.resize(probes.size());
    parallel_for(probes.size(), threads, [&](size_t i) {
        const GrayImage img = load_image(probes[i].image_path);
        const BinaryMask mask = load_mask(probes[i].mask_path);
        const ObjectFeatures f = extract_features(img, mask, cfg);
        const SignaturePair sp = make_signature_pair(f, index.texture_vocab, index.shape_vocab,
                                                     index.texture_idf, index.shape_idf);

        double true_fused = 0.0, true_dt = 0.0, true_ds = 0.0;
        std::vector<double> dts, dss;
        dts.reserve(index.signatures.size());
        dss.reserve(index.signatures.size());
        for (const ObjectSignature& sig : index.signatures) {
            const double dt = histogram_distance(sp.texture, sig.texture_hist);
            const double ds = histogram_distance(sp.shape, sig.shape_hist);
            dts.push_back(dt);
            dss.push_back(ds);
            if (sig.object_id == probes[i].object_id) {
                true_dt = dt;
                true_ds = ds;
                true_fused = fused_distance(dt, ds, w);
            }
        }
        ProbeOutcome& out = report.per_query[i];
        out.object_id = probes[i].object_id;
        out.view_label = probes[i].view_label;
        out.rank_fused = 1;
        out.rank_texture = 1;
        out.rank_shape = 1;
        for (size_t g = 0; g < index.signatures.size(); ++g) {
            if (index.signatures[g].object_id == probes[i].object_id) continue;
            if (fused_distance(dts[g], dss[g], w) < true_fused) ++out.rank_fused;
            if (dts[g] < true_dt) ++out.rank_texture;
            if (dss[g] < true_ds) ++out.rank_shape;
        }
    });

    std::map<std::string, std::vector<const ProbeOutcome*>> by_view;
    for (const ProbeOutcome& out : report.per_query) by_view[out.view_label].push_back(&out);
    for (const auto& [view, outcomes] : by_view)
        for (int n : rank_thresholds) {
            RankReport::Row row;
            row.view_label = view;
            row.n = n;
            for (const ProbeOutcome* out : outcomes) {
                row.rate_fused += out->rank_fused <= n ? 1.0 : 0.0;
                row.rate_texture += out->rank_texture <= n ? 1.0 : 0.0;
                row.rate_shape += out->rank_shape <= n ? 1.0 : 0.0;
            }
            const double count = static_cast<double>(outcomes.size());
            row.rate_fused /= count;
            row.rate_texture /= count;
            row.rate_shape /= count;
            report.rows.push_back(std::move(row));
        }
    return report;
}

namespace {

void write_idf(ByteWriter& w, const IdfModel& m) {
    w.u8(static_cast<uint8_t>(m.modality));
    w.u32(static_cast<uint32_t>(m.idf.size()));
    for (double v : m.idf) w.f64(v);
    w.u64(m.n_docs);
}

IdfModel read_idf(ByteReader& r) {
    IdfModel m;
    const uint8_t mod = r.u8();
    if (mod > 1) throw Error(ErrorCode::index, "unknown modality tag in idf block");
    m.modality = static_cast<Modality>(mod);
    m.idf.resize(r.u32());
    for (double& v : m.idf) v = r.f64();
    m.n_docs = r.u64();
    return m;
}

void write_histogram(ByteWriter& w, const WordHistogram& h) {
    w.u8(static_cast<uint8_t>(h.modality));
    w.u8(static_cast<uint8_t>((h.normalized ? 1 : 0) | (h.zero ? 2 : 0)));
    w.u32(static_cast<uint32_t>(h.values.size()));
    uint32_t nnz = 0;
    for (double v : h.values)
        if (v != 0.0) ++nnz;
    w.u32(nnz);
    for (uint32_t i = 0; i < h.values.size(); ++i)
        if (h.values[i] != 0.0) {
            w.u32(i);
            w.f64(h.values[i]);
        }
}

WordHistogram read_histogram(ByteReader& r) {
    WordHistogram h;
    const uint8_t mod = r.u8();
    if (mod > 1) throw Error(ErrorCode::index, "unknown modality tag in histogram");
    h.modality = static_cast<Modality>(mod);
    const uint8_t flags = r.u8();
    h.normalized = flags & 1;
    h.zero = flags & 2;
    h.values.assign(r.u32(), 0.0);
    const uint32_t nnz = r.u32();
    for (uint32_t i = 0; i < nnz; ++i) {
        const uint32_t word = r.u32();
        if (word >= h.values.size()) throw Error(ErrorCode::index, "histogram word out of range");
        h.values[word] = r.f64();
    }
    return h;
}

}  // namespace

std::string serialize_index(const Index& index) {
    ByteWriter w;
    w.raw(std::string_view(kIndexMagic, 4));
    w.u32(kIndexVersion);
    w.str(index.tool_version);
    w.u64(index.dataset_digest);
    w.str(index.parameter_block);
    w.str(serialize_vocabulary(index.texture_vocab));
    w.str(serialize_vocabulary(index.shape_vocab));
    write_idf(w, index.texture_idf);
    write_idf(w, index.shape_idf);
    w.u32(static_cast<uint32_t>(index.signatures.size()));
    for (const ObjectSignature& sig : index.signatures) {
        w.str(sig.object_id);
        w.str(sig.view_label);
        write_histogram(w, sig.texture_hist);
        write_histogram(w, sig.shape_hist);
        w.u64(sig.n_texture_descriptors);
        w.u64(sig.n_shape_descriptors);
    }
    w.str(serialize_fusion_model(index.fusion));

    std::string bytes = w.bytes();
    const uint32_t crc = crc32c(bytes.data(), bytes.size());
    ByteWriter trailer;
    trailer.u32(crc);
    bytes += trailer.bytes();
    return bytes;
}

Index deserialize_index(std::string_view bytes) {
    if (bytes.size() < 12 || bytes.substr(0, 4) != std::string_view(kIndexMagic, 4))
        throw Error(ErrorCode::index, "not an index file");
    const std::string_view payload = bytes.substr(0, bytes.size() - 4);
    ByteReader trailer(bytes.substr(bytes.size() - 4), ErrorCode::index);
    if (crc32c(payload.data(), payload.size()) != trailer.u32())
        throw Error(ErrorCode::index, "checksum mismatch: index file is corrupted");

    ByteReader r(payload, ErrorCode::index);
    (void)r.u32();  // magic, verified above
    const uint32_t version = r.u32();
    if (version != kIndexVersion)
        throw Error(ErrorCode::index, "unsupported index version " + std::to_string(version));

    Index index;
    index.tool_version = r.str();
    index.dataset_digest = r.u64();
    index.parameter_block = r.str();
    index.texture_vocab = deserialize_vocabulary(r.str());
    index.shape_vocab = deserialize_vocabulary(r.str());
    index.texture_idf = read_idf(r);
    index.shape_idf = read_idf(r);
    const uint32_t n_signatures = r.u32();
    index.signatures.reserve(n_signatures);
    for (uint32_t i = 0; i < n_signatures; ++i) {
        ObjectSignature sig;
        sig.object_id = r.str();
        sig.view_label = r.str();
        sig.texture_hist = read_histogram(r);
        sig.shape_hist = read_histogram(r);
        sig.n_texture_descriptors = r.u64();
        sig.n_shape_descriptors = r.u64();
        index.signatures.push_back(std::move(sig));
    }
    index.fusion = parse_fusion_model(r.str());
    if (!r.done()) throw Error(ErrorCode::index, "trailing bytes in index file");
    return index;
}

void save_index(const Index& index, const std::filesystem::path& path) {
    write_file_atomic(path, serialize_index(index));
}

Index load_index(const std::filesystem::path& path) {
    return deserialize_index(read_file_bytes(path, ErrorCode::index));
}

}  // namespace shapebag
