#include "shapebag/pipeline.hpp"

#include <cmath>

#include "shapebag/boundary_keypoints.hpp"

namespace shapebag {

std::vector<std::vector<double>> ObjectFeatures::shape_vectors() const {
    std::vector<std::vector<double>> out;
    out.reserve(shape_descriptors.size());
    for (const auto& d : shape_descriptors) out.push_back(d.values);
    return out;
}

std::vector<std::vector<double>> ObjectFeatures::texture_vectors() const {
    std::vector<std::vector<double>> out;
    out.reserve(texture_descriptors.size());
    for (const auto& d : texture_descriptors) out.push_back(d.values);
    return out;
}

ObjectFeatures extract_features(const GrayImage& img, const BinaryMask& mask,
                                const RunConfig& cfg) {
    ObjectFeatures f;
    f.contours = trace_boundaries(mask, static_cast<size_t>(cfg.min_contour_length));

    for (size_t id = 0; id < f.contours.size(); ++id) {
        const ContourPyramid pyramid(f.contours[id], cfg.contour_octaves, cfg.kernel_sigma);
        const auto kps =
            detect_keypoints(pyramid, static_cast<int>(id), cfg.min_abs_curvature);
        for (const BoundaryKeypoint& kp : kps) {
            f.boundary_keypoints.push_back(kp);
            const Contour& level = pyramid.level(kp.octave);
            if (level.size() < 2 * static_cast<size_t>(cfg.bon_span) + 1) continue;
            if (auto d = extract_bon(level, kp, cfg.bon_samples, cfg.bon_span))
                f.shape_descriptors.push_back(std::move(*d));
        }
    }

    const auto texture_kps =
        detect_texture_keypoints(img, cfg.dog_octaves, cfg.dog_levels_per_octave, cfg.dog_threshold);
    for (const TextureKeypoint& kp : texture_kps) {
        if (!mask.at_safe(static_cast<int>(std::lround(kp.position.x)),
                          static_cast<int>(std::lround(kp.position.y))))
            continue;
        f.texture_keypoints.push_back(kp);
        if (auto d = extract_gradient_descriptor(img, kp))
            f.texture_descriptors.push_back(std::move(*d));
    }
    return f;
}

}  // namespace shapebag
