#include "shapebag/smoothing.hpp"

#include <cmath>
#include <numbers>

#include "shapebag/error.hpp"

namespace shapebag {

SmoothingKernel SmoothingKernel::gaussian(double sigma) {
    if (sigma < 0.0 || !std::isfinite(sigma))
        throw_usage("smoothing kernel sigma must be finite and nonnegative");
    if (sigma == 0.0) return SmoothingKernel(0, {1.0});
    const int w = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> weights(static_cast<size_t>(2 * w + 1));
    double sum = 0.0;
    for (int j = -w; j <= w; ++j)
        sum += (weights[static_cast<size_t>(j + w)] = std::exp(-(j * j) / (2.0 * sigma * sigma)));
    for (double& v : weights) v /= sum;
    return SmoothingKernel(w, std::move(weights));
}

SmoothingKernel SmoothingKernel::from_weights(std::vector<double> weights) {
    if (weights.empty() || weights.size() % 2 == 0)
        throw_usage("smoothing kernel must have odd length");
    const int w = static_cast<int>(weights.size() / 2);
    double sum = 0.0;
    for (int j = 0; j <= w; ++j) {
        const double a = weights[static_cast<size_t>(w - j)];
        const double b = weights[static_cast<size_t>(w + j)];
        if (a < 0.0 || !std::isfinite(a)) throw_usage("kernel weights must be nonnegative");
        if (std::abs(a - b) > 1e-12) throw_usage("kernel weights must be symmetric");
        sum += (j == 0) ? a : a + b;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw_usage("kernel weights must sum to 1");
    return SmoothingKernel(w, std::move(weights));
}

ShrinkCorrection correction_constant(const SmoothingKernel& kernel, size_t n_v) {
    if (n_v < 3) throw_usage("correction constant requires at least 3 vertices");
    const double phi = 2.0 * std::numbers::pi / static_cast<double>(n_v);
    double denom = 0.0;
    for (int j = -kernel.half_width(); j <= kernel.half_width(); ++j)
        denom += kernel.weight(j) * std::cos(j * phi);
    if (denom <= 0.0)
        throw_usage("smoothing kernel too wide for contour resolution (correction undefined)");
    return ShrinkCorrection{1.0 / denom, phi, n_v};
}

Contour smooth_once(const Contour& c, const SmoothingKernel& kernel) {
    const long n = static_cast<long>(c.size());
    if (n <= 2L * kernel.half_width())
        throw_usage("contour too short for smoothing kernel");
    Contour out;
    out.kind = c.kind;
    out.vertices.resize(c.size());
    for (long i = 0; i < n; ++i) {
        Vec2 acc;
        for (int j = -kernel.half_width(); j <= kernel.half_width(); ++j)
            acc += kernel.weight(j) * c.at_cyclic(i + j);
        out.vertices[static_cast<size_t>(i)] = acc;
    }
    return out;
}

Contour smooth_corrected(const Contour& c, const SmoothingKernel& kernel) {
    const ShrinkCorrection corr = correction_constant(kernel, c.size());
    const Contour first = smooth_once(c, kernel);
    const Contour second = smooth_once(first, kernel);
    Contour out;
    out.kind = c.kind;
    out.vertices.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i)
        out.vertices[i] = first.vertices[i] - corr.k * (second.vertices[i] - first.vertices[i]);
    return out;
}

}  // namespace shapebag
