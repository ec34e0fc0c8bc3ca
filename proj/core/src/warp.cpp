#include "shapebag/warp.hpp"

#include "shapebag/error.hpp"
#include "shapebag/rng.hpp"

namespace shapebag {

Vec2 AffineWarp::apply(const Vec2& p, const Vec2& center) const {
    const Vec2 q = p - center;
    return Vec2{m00 * q.x + m01 * q.y, m10 * q.x + m11 * q.y} + center + translation;
}

Vec2 AffineWarp::pull(const Vec2& p, const Vec2& center) const {
    const Vec2 q = p - center - translation;
    const double det = determinant();
    return Vec2{(m11 * q.x - m01 * q.y) / det, (-m10 * q.x + m00 * q.y) / det} + center;
}

AffineWarp random_warp(double magnitude, std::mt19937_64& rng) {
    if (magnitude < 0.0 || magnitude > 0.3) throw_usage("warp magnitude must be in [0, 0.3]");
    for (int attempt = 0; attempt < 64; ++attempt) {
        AffineWarp w;
        w.m00 = 1.0 + uniform_double(rng, -magnitude, magnitude);
        w.m01 = uniform_double(rng, -magnitude, magnitude);
        w.m10 = uniform_double(rng, -magnitude, magnitude);
        w.m11 = 1.0 + uniform_double(rng, -magnitude, magnitude);
        const double reach = 20.0 * magnitude;
        w.translation.x = uniform_double(rng, -reach, reach);
        w.translation.y = uniform_double(rng, -reach, reach);
        const double det = w.determinant();
        if (det >= 0.5 && det <= 2.0) return w;
    }
    throw Error(ErrorCode::internal, "could not draw a well-conditioned warp");
}

namespace {

Vec2 image_center(int width, int height) {
    return Vec2{(width - 1) / 2.0, (height - 1) / 2.0};
}

}  // namespace

GrayImage warp_image(const GrayImage& img, const AffineWarp& warp) {
    GrayImage out(img.width(), img.height());
    const Vec2 c = image_center(img.width(), img.height());
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) {
            const Vec2 q = warp.pull(Vec2{static_cast<double>(x), static_cast<double>(y)}, c);
            if (q.x < 0.0 || q.y < 0.0 || q.x > img.width() - 1 || q.y > img.height() - 1)
                continue;
            out.at(x, y) = img.sample_bilinear(q.x, q.y);
        }
    return out;
}

BinaryMask warp_mask(const BinaryMask& mask, const AffineWarp& warp) {
    GrayImage lifted(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x) lifted.at(x, y) = mask.at(x, y) ? 1.0 : 0.0;
    const GrayImage warped = warp_image(lifted, warp);
    BinaryMask out(mask.width(), mask.height());
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) out.set(x, y, warped.at(x, y) > 0.5);
    return out;
}

}  // namespace shapebag
