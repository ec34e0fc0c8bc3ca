#pragma once

#include <vector>

#include "shapebag/bon.hpp"
#include "shapebag/config.hpp"
#include "shapebag/contour.hpp"
#include "shapebag/dog.hpp"
#include "shapebag/gradient_descriptor.hpp"
#include "shapebag/image.hpp"

namespace shapebag {

/// Everything extracted from one image+mask pair, before quantization.
struct ObjectFeatures {
    std::vector<Contour> contours;
    std::vector<BoundaryKeypoint> boundary_keypoints;  ///< all detected
    std::vector<TextureKeypoint> texture_keypoints;    ///< on-mask only
    std::vector<NormalProfileDescriptor> shape_descriptors;
    std::vector<GradientDescriptor> texture_descriptors;

    std::vector<std::vector<double>> shape_vectors() const;
    std::vector<std::vector<double>> texture_vectors() const;
};

/// Runs both channels: boundary tracing, the contour scale pyramid with
/// curvature keypoints and normal profiles; and DoG detection with gradient
/// descriptors, keeping only keypoints whose center lies on the mask.
ObjectFeatures extract_features(const GrayImage& img, const BinaryMask& mask,
                                const RunConfig& cfg);

}  // namespace shapebag
