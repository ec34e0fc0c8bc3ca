#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace shapebag {

/// Every tunable in one block. Defaults are the desk-scale working set;
/// text config files, SHAPEBAG_* environment variables, and CLI flags
/// override them in that order.
struct RunConfig {
    // contour channel
    double kernel_sigma = 2.0;
    int contour_octaves = 4;
    double min_abs_curvature = 0.05;
    int min_contour_length = 16;
    int bon_samples = 13;
    int bon_span = 24;

    // texture channel
    int dog_octaves = 4;
    int dog_levels_per_octave = 3;
    double dog_threshold = 0.03;

    // codebook
    int texture_vocab_size = 5000;
    int shape_vocab_size = 3000;
    int kmeans_max_iters = 100;

    // segmentation of images without explicit masks (synthetic generator)
    double mask_threshold = 0.1;

    // fusion weight learning
    int warps_per_image = 5;
    double warp_magnitude = 0.08;
    double fusion_grid_step = 0.05;
    std::string fusion_objective = "rank1";

    uint64_t seed = 42;
    int threads = 0;  ///< 0 = hardware concurrency

    bool operator==(const RunConfig&) const = default;
};

/// Applies `key = value` lines from a config file ('#' comments allowed).
/// Unknown keys and unparsable values raise usage errors.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Same parsing from an in-memory block (e.g. the copy stored in an index);
/// `source` names the origin in error messages.
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& source);

/// Applies SHAPEBAG_<UPPERCASE_KEY> environment overrides.
void apply_env_overrides(RunConfig& cfg);

/// Range-checks every field; throws a usage error naming the bad key.
void validate_config(const RunConfig& cfg);

/// Canonical text form (fixed key order, %.17g doubles) — the digest input.
std::string serialize_config(const RunConfig& cfg);

/// Stable 16-hex-digit fingerprint of the resolved configuration.
std::string config_digest(const RunConfig& cfg);

}  // namespace shapebag
