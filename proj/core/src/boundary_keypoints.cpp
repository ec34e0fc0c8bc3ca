#include "shapebag/boundary_keypoints.hpp"

#include <cmath>
#include <numbers>

#include "shapebag/curvature.hpp"

namespace shapebag {

namespace {

bool correction_defined(const SmoothingKernel& kernel, size_t n_v) {
    const double phi = 2.0 * std::numbers::pi / static_cast<double>(n_v);
    double denom = 0.0;
    for (int j = -kernel.half_width(); j <= kernel.half_width(); ++j)
        denom += kernel.weight(j) * std::cos(j * phi);
    return denom > 0.0;
}

Contour decimate(const Contour& c) {
    Contour out;
    out.kind = c.kind;
    out.vertices.reserve((c.size() + 1) / 2);
    for (size_t i = 0; i < c.size(); i += 2) out.vertices.push_back(c.at(i));
    return out;
}

}  // namespace

ContourPyramid::ContourPyramid(const Contour& base, int n_octaves, double kernel_sigma,
                               size_t min_vertices) {
    const SmoothingKernel kernel = SmoothingKernel::gaussian(kernel_sigma);
    if (base.size() < std::max<size_t>(min_vertices, 3)) return;
    levels_.push_back(base);
    while (levels() < n_octaves) {
        const Contour& cur = levels_.back();
        if (cur.size() <= 2 * static_cast<size_t>(kernel.half_width())) break;
        if (!correction_defined(kernel, cur.size())) break;
        Contour next = decimate(smooth_corrected(cur, kernel));
        if (next.size() < min_vertices) break;
        levels_.push_back(std::move(next));
    }
}

std::vector<BoundaryKeypoint> detect_keypoints(const ContourPyramid& pyramid, int contour_id,
                                               double min_abs_curvature) {
    std::vector<BoundaryKeypoint> keypoints;
    for (int o = 0; o < pyramid.levels(); ++o) {
        const Contour& level = pyramid.level(o);
        const size_t n = level.size();
        std::vector<double> mag(n, 0.0);
        for (size_t i = 0; i < n; ++i)
            if (const auto k = try_curvature_at(level, i)) mag[i] = std::abs(*k);
        const size_t stride = size_t{1} << o;
        for (size_t i = 0; i < n; ++i) {
            const double m = mag[i];
            if (m < min_abs_curvature) continue;
            if (m <= mag[(i + n - 1) % n] || m <= mag[(i + 1) % n]) continue;
            const double k = *try_curvature_at(level, i);
            keypoints.push_back({contour_id, i * stride, o, k, level.at(i)});
        }
    }
    return keypoints;
}

std::vector<BoundaryKeypoint> detect_keypoints(const Contour& c, int n_octaves,
                                               double kernel_sigma, double min_abs_curvature) {
    return detect_keypoints(ContourPyramid(c, n_octaves, kernel_sigma), 0, min_abs_curvature);
}

}  // namespace shapebag
