#include "doctest.h"
#include "shapebag/smoothing.hpp"

#include <cmath>
#include <numbers>

#include "shapebag/error.hpp"

using namespace shapebag;

namespace {

Contour regular_ngon(size_t n, double radius, Vec2 center = {0.0, 0.0}) {
    Contour c;
    c.kind = ContourKind::external;
    c.vertices.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        c.vertices.push_back(center + Vec2{radius * std::cos(a), radius * std::sin(a)});
    }
    return c;
}

}  // namespace

TEST_CASE("gaussian kernel is symmetric, normalized, identity at sigma 0") {
    const auto k = SmoothingKernel::gaussian(2.0);
    CHECK(k.half_width() == 6);
    double sum = 0.0;
    for (int j = -k.half_width(); j <= k.half_width(); ++j) {
        CHECK(k.weight(j) == k.weight(-j));
        CHECK(k.weight(j) > 0.0);
        sum += k.weight(j);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    const auto id = SmoothingKernel::gaussian(0.0);
    CHECK(id.half_width() == 0);
    CHECK(id.weight(0) == 1.0);
}

TEST_CASE("from_weights validates shape") {
    CHECK_NOTHROW(SmoothingKernel::from_weights({0.25, 0.5, 0.25}));
    CHECK_THROWS_AS(SmoothingKernel::from_weights({0.5, 0.5}), Error);          // even length
    CHECK_THROWS_AS(SmoothingKernel::from_weights({0.3, 0.5, 0.2}), Error);     // asymmetric
    CHECK_THROWS_AS(SmoothingKernel::from_weights({0.25, 0.25, 0.25}), Error);  // sum != 1
}

TEST_CASE("correction constant: identity kernel gives K = 1") {
    const auto id = SmoothingKernel::gaussian(0.0);
    CHECK(correction_constant(id, 16).k == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("correction constant: (0.25, 0.5, 0.25) on a square gives K = 2") {
    // denominator = 0.5 + 2 * 0.25 * cos(pi/2) = 0.5
    const auto k = SmoothingKernel::from_weights({0.25, 0.5, 0.25});
    CHECK(correction_constant(k, 4).k == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("correction constant approaches 1 for dense polygons") {
    const auto k = SmoothingKernel::gaussian(2.0);
    CHECK(correction_constant(k, 1000000).k == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("correction constant rejects kernels wider than the polygon supports") {
    const auto k = SmoothingKernel::from_weights({0.25, 0.5, 0.25});
    CHECK_THROWS_AS(correction_constant(k, 2), Error);
}

TEST_CASE("smoothing preserves the centroid") {
    const Contour c = regular_ngon(64, 10.0, {3.0, -2.0});
    const auto k = SmoothingKernel::gaussian(1.5);
    const Vec2 c0 = c.centroid();
    const Vec2 c1 = smooth_once(c, k).centroid();
    const Vec2 c2 = smooth_corrected(c, k).centroid();
    CHECK((c1 - c0).norm() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK((c2 - c0).norm() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("plain smoothing shrinks an n-gon, corrected smoothing does not") {
    const Contour c = regular_ngon(64, 10.0);
    const auto k = SmoothingKernel::gaussian(2.0);
    const double before = c.circumference();
    const double plain = smooth_once(c, k).circumference();
    const double corrected = smooth_corrected(c, k).circumference();
    CHECK(plain < before * 0.999);
    CHECK(corrected == doctest::Approx(before).epsilon(1e-9));
}

TEST_CASE("regular n-gon is an exact fixed point of corrected smoothing") {
    // Smoothing scales a regular n-gon radially by the kernel's cosine sum;
    // the corrected pass multiplies by exactly the inverse factor.
    Contour c = regular_ngon(48, 7.0, {1.0, 2.0});
    const auto k = SmoothingKernel::gaussian(1.0);
    const double r0 = c.circumference();
    for (int i = 0; i < 50; ++i) c = smooth_corrected(c, k);
    CHECK(c.circumference() == doctest::Approx(r0).epsilon(1e-9));
}

TEST_CASE("corrected smoothing still flattens non-circular detail") {
    // A noisy polygon gets smoother (its curvature extremes damp) even
    // though the circumference is held.
    Contour c = regular_ngon(128, 20.0);
    for (size_t i = 0; i < c.size(); i += 2) c.vertices[i] = c.vertices[i] * 1.05;
    const auto k = SmoothingKernel::gaussian(1.0);
    double roughness_before = 0.0, roughness_after = 0.0;
    for (size_t i = 0; i < c.size(); ++i)
        roughness_before += (c.at_cyclic(static_cast<long>(i) + 1) - c.at(i)).squared_norm();
    Contour s = c;
    for (int it = 0; it < 5; ++it) s = smooth_corrected(s, k);
    for (size_t i = 0; i < s.size(); ++i)
        roughness_after += (s.at_cyclic(static_cast<long>(i) + 1) - s.at(i)).squared_norm();
    CHECK(roughness_after < roughness_before);
}

TEST_CASE("smooth_once rejects contours shorter than the kernel") {
    const auto k = SmoothingKernel::gaussian(2.0);  // half width 6
    CHECK_THROWS_AS(smooth_once(regular_ngon(12, 5.0), k), Error);
}
