#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace shapebag {

/// Synthetic corpus layout: objects cycle through three classes spanning the
/// textured-to-smooth continuum (noise-filled rectangles, mildly textured
/// blobs, flat-filled stars) in a fixed 1:1:1 ratio. Every object gets a
/// nominal view 0 for the gallery plus warped pseudo-views per stated
/// magnitude for the probe set.
struct SynthOptions {
    int n_objects = 30;            ///< must be a positive multiple of 3
    uint64_t seed = 7;
    std::vector<double> magnitudes = {0.08};
    int views_per_magnitude = 5;
    int canvas = 160;
};

struct SynthResult {
    std::filesystem::path gallery_manifest;
    std::filesystem::path probe_manifest;
    size_t n_gallery = 0;
    size_t n_probes = 0;
};

/// Writes images, masks, and both manifests under out_dir. Byte-identical
/// re-runs for equal options.
SynthResult generate_synthetic_dataset(const std::filesystem::path& out_dir,
                                       const SynthOptions& opt);

}  // namespace shapebag
