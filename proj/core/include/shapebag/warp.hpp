#pragma once

#include <random>

#include "shapebag/image.hpp"

namespace shapebag {

/// Affine view perturbation: p -> matrix * (p - center) + center + translation,
/// where center is the image midpoint at application time.
struct AffineWarp {
    double m00 = 1.0, m01 = 0.0;
    double m10 = 0.0, m11 = 1.0;
    Vec2 translation;

    double determinant() const { return m00 * m11 - m01 * m10; }
    Vec2 apply(const Vec2& p, const Vec2& center) const;
    /// Source position that maps onto p (inverse warp).
    Vec2 pull(const Vec2& p, const Vec2& center) const;
};

/// Draws matrix = I + E with E entries uniform in [-magnitude, magnitude]
/// and translation uniform in [-20*magnitude, 20*magnitude] pixels,
/// resampling (bounded retries) until the determinant lands in [0.5, 2].
/// magnitude must lie in [0, 0.3].
AffineWarp random_warp(double magnitude, std::mt19937_64& rng);

/// Bilinear resampling; source positions outside the image become 0.
GrayImage warp_image(const GrayImage& img, const AffineWarp& warp);

/// Mask warped as a 0/1 image and re-thresholded at 0.5.
BinaryMask warp_mask(const BinaryMask& mask, const AffineWarp& warp);

}  // namespace shapebag
