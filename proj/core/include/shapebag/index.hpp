#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "shapebag/config.hpp"
#include "shapebag/fusion.hpp"
#include "shapebag/histograms.hpp"
#include "shapebag/image.hpp"
#include "shapebag/manifest.hpp"
#include "shapebag/vocabulary.hpp"

namespace shapebag {

inline constexpr char kToolVersion[] = "0.1.0";

/// Dual-modality signature of one gallery object (single training view).
struct ObjectSignature {
    std::string object_id;
    std::string view_label;
    WordHistogram texture_hist;  ///< tf-idf normalized or zero-flagged
    WordHistogram shape_hist;
    uint64_t n_texture_descriptors = 0;
    uint64_t n_shape_descriptors = 0;

    bool operator==(const ObjectSignature&) const = default;
};

struct Index {
    Vocabulary texture_vocab;
    Vocabulary shape_vocab;
    IdfModel texture_idf;
    IdfModel shape_idf;
    std::vector<ObjectSignature> signatures;  ///< sorted by object_id
    FusionModel fusion;
    uint64_t dataset_digest = 0;    ///< manifest content digest
    std::string parameter_block;    ///< resolved config, canonical text form
    std::string tool_version = kToolVersion;

    bool operator==(const Index&) const = default;

    /// The configuration the index was built with.
    RunConfig build_config() const;
};

struct QueryResult {
    std::string object_id;
    double distance = 0.0;  ///< fused
    double dt = 0.0;        ///< texture channel
    double ds = 0.0;        ///< shape channel
};

struct ProbeOutcome {
    std::string object_id;
    std::string view_label;
    int rank_fused = 0;
    int rank_texture = 0;
    int rank_shape = 0;
};

/// Recognition rates per view label and rank threshold, for the fused
/// distance and both single-modality endpoints.
struct RankReport {
    struct Row {
        std::string view_label;
        int n = 0;
        double rate_fused = 0.0;
        double rate_texture = 0.0;
        double rate_shape = 0.0;
    };
    std::vector<int> rank_thresholds;
    std::vector<Row> rows;           ///< view labels ascending, then N ascending
    std::vector<ProbeOutcome> per_query;
};

/// Runs the full build: feature extraction over the manifest's objects,
/// vocabulary training, tf-idf fitting, signature assembly, and fusion
/// weight learning from synthetically warped pseudo-views.
Index build_index(const std::filesystem::path& manifest_path, const RunConfig& cfg);

/// Signature of a non-gallery image under an existing index's vocabularies.
SignaturePair signature_for_image(const Index& index, const GrayImage& img,
                                  const BinaryMask& mask);

/// Ranked gallery list for one query, ascending by fused distance with ties
/// broken by object_id. `w_override` forces a fusion weight (0 = texture
/// only, 1 = shape only); the index's learned weight is used otherwise.
std::vector<QueryResult> query(const Index& index, const GrayImage& img, const BinaryMask& mask,
                               size_t top_k, std::optional<double> w_override = std::nullopt);

/// Rank-N recognition over a labeled probe set. A probe's rank is 1 plus the
/// number of gallery objects strictly closer than its true object.
RankReport evaluate(const Index& index, const std::vector<DatasetRecord>& probes,
                    const std::vector<int>& rank_thresholds, int threads = 0);

/// Checksummed versioned binary index format (magic "SBIX").
std::string serialize_index(const Index& index);
Index deserialize_index(std::string_view bytes);
void save_index(const Index& index, const std::filesystem::path& path);
Index load_index(const std::filesystem::path& path);

}  // namespace shapebag
