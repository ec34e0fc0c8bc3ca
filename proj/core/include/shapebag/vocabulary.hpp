#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace shapebag {

enum class Modality : uint8_t { texture = 0, shape = 1 };

inline const char* modality_name(Modality m) { return m == Modality::texture ? "texture" : "shape"; }

struct TrainStats {
    int iterations = 0;
    double final_distortion = 0.0;
    std::vector<double> distortion_trace;  ///< one entry per Lloyd iteration
};

/// K-means codebook. Centroids are held in 32-bit floats — the on-disk
/// precision — so a saved and reloaded vocabulary quantizes identically to
/// the freshly trained one.
struct Vocabulary {
    Modality modality = Modality::texture;
    uint32_t k = 0;
    uint32_t dim = 0;
    std::vector<float> centroids;  ///< k * dim, row-major
    uint64_t train_seed = 0;
    TrainStats train_stats;  ///< not persisted; excluded from equality

    const float* centroid(uint32_t w) const { return centroids.data() + static_cast<size_t>(w) * dim; }

    bool operator==(const Vocabulary& o) const {
        return modality == o.modality && k == o.k && dim == o.dim && centroids == o.centroids &&
               train_seed == o.train_seed;
    }
};

/// Lloyd's K-means with k-means++ seeding. Runs in double precision and
/// rounds centroids to float once at the end. Stops at max_iters or when the
/// relative distortion improvement drops below 1e-4; empty clusters are
/// re-seeded from the point farthest from its centroid. Deterministic for
/// fixed inputs and seed regardless of thread count.
Vocabulary train_vocabulary(const std::vector<std::vector<double>>& descriptors, Modality modality,
                            uint32_t k, uint64_t seed, int max_iters = 100, int threads = 0);

/// Index of the nearest centroid (Euclidean, ties to the lowest index).
uint32_t quantize(const Vocabulary& v, const std::vector<double>& d);

/// Versioned binary vocabulary format (magic "SBVC").
std::string serialize_vocabulary(const Vocabulary& v);
Vocabulary deserialize_vocabulary(std::string_view bytes);
void save_vocabulary(const Vocabulary& v, const std::filesystem::path& path);
Vocabulary load_vocabulary(const std::filesystem::path& path);

}  // namespace shapebag
