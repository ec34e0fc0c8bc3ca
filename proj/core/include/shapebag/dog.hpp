#pragma once

#include <vector>

#include "shapebag/image.hpp"

namespace shapebag {

/// Scale-space extremum of the difference-of-Gaussians pyramid.
struct TextureKeypoint {
    Vec2 position;          ///< sub-sampled octaves mapped back to input pixels
    double sigma = 0.0;     ///< absolute scale of the DoG level
    double response = 0.0;  ///< DoG value at the extremum
};

inline constexpr double kDogBaseSigma = 1.6;

/// Descriptor sample spacing for a keypoint: one pixel at the base scale,
/// doubling per octave.
inline double descriptor_spacing(const TextureKeypoint& kp) { return kp.sigma / kDogBaseSigma; }

/// Margin (pixels, input frame) a keypoint must keep from the image border
/// so its descriptor patch has full bilinear support.
inline double descriptor_margin(const TextureKeypoint& kp) {
    return 8.5 * descriptor_spacing(kp) + 2.0;
}

/// Separable Gaussian blur with replicated borders; sigma <= 0 returns a copy.
GrayImage gaussian_blur(const GrayImage& img, double sigma);

/// Detects strict 26-neighborhood extrema of a difference-of-Gaussians
/// pyramid (levels_per_octave scales per doubling, upright, no sub-pixel
/// refinement). Keeps extrema with |response| >= threshold whose descriptor
/// patch fits inside the image. Images smaller than 32x32 yield no keypoints.
std::vector<TextureKeypoint> detect_texture_keypoints(const GrayImage& img, int n_octaves,
                                                      int levels_per_octave, double threshold);

}  // namespace shapebag
