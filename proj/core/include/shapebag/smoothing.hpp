#pragma once

#include <vector>

#include "shapebag/contour.hpp"

namespace shapebag {

/// Symmetric normalized kernel G_{-w}..G_{+w} for contour smoothing.
class SmoothingKernel {
public:
    /// Discrete Gaussian samples exp(-j^2 / 2 sigma^2), truncated at
    /// w = ceil(3 sigma) and renormalized to sum 1. sigma = 0 gives the
    /// identity kernel.
    static SmoothingKernel gaussian(double sigma);

    /// Validates symmetry, nonnegativity, odd length and unit sum.
    static SmoothingKernel from_weights(std::vector<double> weights);

    int half_width() const { return half_width_; }
    /// Weight G_j for j in [-half_width, +half_width].
    double weight(int j) const { return weights_[static_cast<size_t>(j + half_width_)]; }
    const std::vector<double>& weights() const { return weights_; }

private:
    SmoothingKernel(int half_width, std::vector<double> weights)
        : half_width_(half_width), weights_(std::move(weights)) {}

    int half_width_ = 0;
    std::vector<double> weights_{1.0};
};

/// Correction constant for shrink-free smoothing:
/// K = 1 / sum_j G_j cos(j * phi), phi = 2*pi / n_v. K >= 1 for any valid
/// kernel. Rejects kernels whose cosine-weighted sum is not positive (kernel
/// wider than the contour resolution supports).
struct ShrinkCorrection {
    double k = 1.0;
    double phi = 0.0;
    size_t n_v = 0;
};

ShrinkCorrection correction_constant(const SmoothingKernel& kernel, size_t n_v);

/// One pass of plain Gaussian smoothing with cyclic indexing. Shrinks closed
/// contours toward their centroid when iterated. Requires n_v > 2w.
Contour smooth_once(const Contour& c, const SmoothingKernel& kernel);

/// Shrink-corrected smoothing: a second smoothing pass is applied and its
/// differential subtracted, scaled by the correction constant, so that
/// repeated smoothing preserves the circumference.
Contour smooth_corrected(const Contour& c, const SmoothingKernel& kernel);

}  // namespace shapebag
