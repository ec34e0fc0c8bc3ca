#include "shapebag/vocabulary.hpp"

#include <cmath>
#include <random>

#include "shapebag/binary_io.hpp"
#include "shapebag/error.hpp"
#include "shapebag/parallel.hpp"
#include "shapebag/rng.hpp"

namespace shapebag {

namespace {

constexpr uint32_t kVocabVersion = 1;
constexpr char kVocabMagic[5] = "SBVC";

double sq_dist(const double* a, const double* b, size_t dim) {
    double acc = 0.0;
    for (size_t i = 0; i < dim; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void validate_training_input(const std::vector<std::vector<double>>& descriptors, uint32_t k) {
    if (k < 1) throw_usage("vocabulary size must be at least 1");
    if (descriptors.size() < k)
        throw Error(ErrorCode::vocab_size,
                    "vocabulary size " + std::to_string(k) + " exceeds descriptor count " +
                        std::to_string(descriptors.size()) + "; reduce it to at most " +
                        std::to_string(descriptors.size()));
    const size_t dim = descriptors.front().size();
    if (dim == 0) throw_usage("descriptors must be non-empty vectors");
    for (const auto& d : descriptors) {
        if (d.size() != dim) throw_usage("descriptor dimensions are not uniform");
        for (double v : d)
            if (!std::isfinite(v)) throw_usage("non-finite descriptor component");
    }
}

std::vector<double> plus_plus_seed(const std::vector<std::vector<double>>& points, uint32_t k,
                                   std::mt19937_64& rng) {
    const size_t n = points.size();
    const size_t dim = points.front().size();
    std::vector<double> centroids(static_cast<size_t>(k) * dim);
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());

    size_t first = static_cast<size_t>(uniform_index(rng, n));
    std::copy(points[first].begin(), points[first].end(), centroids.begin());

    for (uint32_t c = 1; c < k; ++c) {
        const double* last = centroids.data() + static_cast<size_t>(c - 1) * dim;
        double total = 0.0;
        for (size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], sq_dist(points[i].data(), last, dim));
            total += d2[i];
        }
        size_t pick;
        if (total > 0.0) {
            const double r = uniform_double(rng, 0.0, total);
            double cum = 0.0;
            pick = n - 1;
            for (size_t i = 0; i < n; ++i) {
                cum += d2[i];
                if (cum > r) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<size_t>(uniform_index(rng, n));
        }
        std::copy(points[pick].begin(), points[pick].end(),
                  centroids.begin() + static_cast<size_t>(c) * dim);
    }
    return centroids;
}

}  // namespace

Vocabulary train_vocabulary(const std::vector<std::vector<double>>& descriptors, Modality modality,
                            uint32_t k, uint64_t seed, int max_iters, int threads) {
    validate_training_input(descriptors, k);
    if (max_iters < 1) throw_usage("max_iters must be at least 1");

    const size_t n = descriptors.size();
    const size_t dim = descriptors.front().size();
    std::mt19937_64 rng(seed);
    std::vector<double> centroids = plus_plus_seed(descriptors, k, rng);

    std::vector<uint32_t> assign(n, 0);
    std::vector<double> d2(n, 0.0);
    TrainStats stats;

    for (int iter = 0; iter < max_iters; ++iter) {
        parallel_for(n, threads, [&](size_t i) {
            uint32_t best = 0;
            double best_d2 = std::numeric_limits<double>::infinity();
            for (uint32_t c = 0; c < k; ++c) {
                const double d = sq_dist(descriptors[i].data(), centroids.data() + static_cast<size_t>(c) * dim, dim);
                if (d < best_d2) {
                    best_d2 = d;
                    best = c;
                }
            }
            assign[i] = best;
            d2[i] = best_d2;
        });

        double distortion = 0.0;
        for (size_t i = 0; i < n; ++i) distortion += d2[i];
        stats.distortion_trace.push_back(distortion);

        const size_t t = stats.distortion_trace.size();
        const bool converged =
            distortion == 0.0 ||
            (t >= 2 && stats.distortion_trace[t - 2] - distortion <
                           1e-4 * stats.distortion_trace[t - 2]);
        if (converged || iter == max_iters - 1) break;

        std::vector<size_t> counts(k, 0);
        for (size_t i = 0; i < n; ++i) ++counts[assign[i]];
        for (uint32_t c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            // Re-seed from the farthest point whose source cluster survives.
            size_t far = 0;
            double far_d2 = -1.0;
            for (size_t i = 0; i < n; ++i)
                if (counts[assign[i]] > 1 && d2[i] > far_d2) {
                    far_d2 = d2[i];
                    far = i;
                }
            --counts[assign[far]];
            assign[far] = c;
            d2[far] = 0.0;
            counts[c] = 1;
        }

        std::fill(centroids.begin(), centroids.end(), 0.0);
        for (size_t i = 0; i < n; ++i) {
            double* dst = centroids.data() + static_cast<size_t>(assign[i]) * dim;
            for (size_t j = 0; j < dim; ++j) dst[j] += descriptors[i][j];
        }
        for (uint32_t c = 0; c < k; ++c) {
            double* dst = centroids.data() + static_cast<size_t>(c) * dim;
            for (size_t j = 0; j < dim; ++j) dst[j] /= static_cast<double>(counts[c]);
        }
    }

    stats.iterations = static_cast<int>(stats.distortion_trace.size());
    stats.final_distortion = stats.distortion_trace.back();

    Vocabulary v;
    v.modality = modality;
    v.k = k;
    v.dim = static_cast<uint32_t>(dim);
    v.centroids.resize(centroids.size());
    for (size_t i = 0; i < centroids.size(); ++i) v.centroids[i] = static_cast<float>(centroids[i]);
    v.train_seed = seed;
    v.train_stats = std::move(stats);
    return v;
}

uint32_t quantize(const Vocabulary& v, const std::vector<double>& d) {
    if (d.size() != v.dim) throw_usage("descriptor dimension does not match vocabulary");
    for (double x : d)
        if (!std::isfinite(x)) throw_usage("non-finite descriptor component");
    uint32_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (uint32_t c = 0; c < v.k; ++c) {
        const float* cen = v.centroid(c);
        double acc = 0.0;
        for (uint32_t j = 0; j < v.dim; ++j) {
            const double diff = d[j] - static_cast<double>(cen[j]);
            acc += diff * diff;
        }
        if (acc < best_d2) {
            best_d2 = acc;
            best = c;
        }
    }
    return best;
}

std::string serialize_vocabulary(const Vocabulary& v) {
    ByteWriter w;
    w.raw(std::string_view(kVocabMagic, 4));
    w.u32(kVocabVersion);
    w.u8(static_cast<uint8_t>(v.modality));
    w.u32(v.k);
    w.u32(v.dim);
    for (float c : v.centroids) w.f32(c);
    w.u64(v.train_seed);
    return w.bytes();
}

Vocabulary deserialize_vocabulary(std::string_view bytes) {
    ByteReader r(bytes, ErrorCode::index);
    if (bytes.size() < 4 || bytes.substr(0, 4) != std::string_view(kVocabMagic, 4))
        throw Error(ErrorCode::index, "not a vocabulary block");
    (void)r.u32();  // skip past magic
    const uint32_t version = r.u32();
    if (version != kVocabVersion)
        throw Error(ErrorCode::index, "unsupported vocabulary version " + std::to_string(version));
    Vocabulary v;
    const uint8_t m = r.u8();
    if (m > 1) throw Error(ErrorCode::index, "unknown modality tag");
    v.modality = static_cast<Modality>(m);
    v.k = r.u32();
    v.dim = r.u32();
    if (v.k < 1 || v.dim < 1) throw Error(ErrorCode::index, "empty vocabulary");
    v.centroids.resize(static_cast<size_t>(v.k) * v.dim);
    for (float& c : v.centroids) {
        c = r.f32();
        if (!std::isfinite(c)) throw Error(ErrorCode::index, "non-finite centroid");
    }
    v.train_seed = r.u64();
    if (!r.done()) throw Error(ErrorCode::index, "trailing bytes after vocabulary");
    return v;
}

void save_vocabulary(const Vocabulary& v, const std::filesystem::path& path) {
    write_file_atomic(path, serialize_vocabulary(v));
}

Vocabulary load_vocabulary(const std::filesystem::path& path) {
    return deserialize_vocabulary(read_file_bytes(path, ErrorCode::index));
}

}  // namespace shapebag
