#include "shapebag/gradient_descriptor.hpp"

#include <cmath>
#include <numbers>

namespace shapebag {

std::optional<GradientDescriptor> extract_gradient_descriptor(const GrayImage& img,
                                                              const TextureKeypoint& kp) {
    constexpr int kGrid = 18;  // 16x16 interior + 1 ring for central differences
    const double st = descriptor_spacing(kp);
    const double half = 8.5 * st;
    if (kp.position.x - half < 0.0 || kp.position.y - half < 0.0 ||
        kp.position.x + half > img.width() - 1 || kp.position.y + half > img.height() - 1)
        return std::nullopt;

    double grid[kGrid][kGrid];
    for (int r = 0; r < kGrid; ++r)
        for (int c = 0; c < kGrid; ++c)
            grid[r][c] = img.sample_bilinear(kp.position.x + (c - 8.5) * st,
                                             kp.position.y + (r - 8.5) * st);

    GradientDescriptor d;
    d.source = kp;
    d.values.assign(kGradientDescriptorDims, 0.0);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            const double gx = grid[r + 1][c + 2] - grid[r + 1][c];
            const double gy = grid[r + 2][c + 1] - grid[r][c + 1];
            const double mag = std::hypot(gx, gy);
            if (mag == 0.0) continue;
            const double theta = std::atan2(gy, gx);
            const int bin = ((static_cast<int>(std::floor(theta / (std::numbers::pi / 4.0))) % 8) + 8) % 8;
            const double du = c - 7.5, dv = r - 7.5;
            const double w = mag * std::exp(-(du * du + dv * dv) / 128.0);
            d.values[static_cast<size_t>(((r / 4) * 4 + c / 4) * 8 + bin)] += w;
        }

    double norm = 0.0;
    for (double v : d.values) norm += v * v;
    if (norm == 0.0) return std::nullopt;
    norm = std::sqrt(norm);
    for (double& v : d.values) v = std::min(v / norm, 0.2);
    norm = 0.0;
    for (double v : d.values) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : d.values) v /= norm;
    return d;
}

}  // namespace shapebag
