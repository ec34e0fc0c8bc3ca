#pragma once

#include <optional>
#include <vector>

#include "shapebag/dog.hpp"
#include "shapebag/image.hpp"

namespace shapebag {

/// 128-dim upright gradient-orientation descriptor: 16 cells of a 16x16
/// resampled patch, 8 orientation bins per cell, cell-major in row order.
struct GradientDescriptor {
    std::vector<double> values;  ///< length 128, unit norm, non-negative
    TextureKeypoint source;
};

inline constexpr int kGradientDescriptorDims = 128;

/// Resamples an 18x18 grid around the keypoint (spacing descriptor_spacing,
/// bilinear), takes central differences over the interior 16x16, and
/// accumulates magnitude- and Gaussian-weighted 8-bin orientation histograms
/// per 4x4 cell. The result is L2-normalized, clamped at 0.2 per component,
/// and renormalized. Returns nullopt when the patch leaves the image or the
/// patch has no gradient energy.
std::optional<GradientDescriptor> extract_gradient_descriptor(const GrayImage& img,
                                                              const TextureKeypoint& kp);

}  // namespace shapebag
