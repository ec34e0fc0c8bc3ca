#include "doctest.h"

#include <cmath>
#include <numbers>

#include "shapebag/boundary_keypoints.hpp"
#include "shapebag/curvature.hpp"

using namespace shapebag;

namespace {

Contour regular_ngon(size_t n, double radius) {
    Contour c;
    for (size_t i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        c.vertices.push_back({radius * std::cos(a), radius * std::sin(a)});
    }
    return c;
}

Contour rounded_square(size_t per_side, double half) {
    // axis-aligned square sampled densely; corners are curvature spikes
    Contour c;
    const auto push_edge = [&](Vec2 a, Vec2 b) {
        for (size_t i = 0; i < per_side; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(per_side);
            c.vertices.push_back(a + (b - a) * t);
        }
    };
    push_edge({-half, -half}, {half, -half});
    push_edge({half, -half}, {half, half});
    push_edge({half, half}, {-half, half});
    push_edge({-half, half}, {-half, -half});
    return c;
}

}  // namespace

TEST_CASE("pyramid halves vertex counts per octave") {
    const Contour base = regular_ngon(256, 40.0);
    const ContourPyramid p(base, 4, 2.0);
    REQUIRE(p.levels() == 4);
    CHECK(p.level(0).size() == 256);
    CHECK(p.level(1).size() == 128);
    CHECK(p.level(2).size() == 64);
    CHECK(p.level(3).size() == 32);
}

TEST_CASE("pyramid stops before levels get too small") {
    const Contour base = regular_ngon(64, 40.0);
    const ContourPyramid p(base, 6, 2.0);
    // 64 -> 32 -> 16, then the next halving would drop under kMinVertices
    CHECK(p.levels() == 3);
    CHECK(p.level(p.levels() - 1).size() == 16);
}

TEST_CASE("tiny contours yield an empty pyramid") {
    const Contour base = regular_ngon(8, 10.0);
    const ContourPyramid p(base, 4, 2.0);
    CHECK(p.levels() == 0);
    CHECK(detect_keypoints(p, 0, 0.01).empty());
}

TEST_CASE("decimated levels keep the even base vertices smoothed") {
    const Contour base = regular_ngon(128, 40.0);
    const ContourPyramid p(base, 2, 1.0);
    REQUIRE(p.levels() == 2);
    const Contour smoothed = smooth_corrected(p.level(0), SmoothingKernel::gaussian(1.0));
    REQUIRE(p.level(1).size() * 2 == smoothed.size());
    for (size_t i = 0; i < p.level(1).size(); ++i) {
        CHECK(p.level(1).at(i).x == smoothed.at(2 * i).x);
        CHECK(p.level(1).at(i).y == smoothed.at(2 * i).y);
    }
}

TEST_CASE("square corners are keypoints at the finest octave") {
    const Contour base = rounded_square(64, 30.0);
    const ContourPyramid p(base, 3, 2.0);
    const auto kps = detect_keypoints(p, 7, 0.05);
    REQUIRE_FALSE(kps.empty());
    size_t fine_corner_hits = 0;
    for (const auto& kp : kps) {
        CHECK(kp.contour_id == 7);
        if (kp.octave != 0) continue;
        // corners of the traversal sit at multiples of 64 (per_side)
        if (kp.vertex_index % 64 == 0) ++fine_corner_hits;
        // keypoint magnitude respects the threshold
        CHECK(std::abs(kp.curvature) >= 0.05);
    }
    CHECK(fine_corner_hits == 4);
}

TEST_CASE("near-constant curvature falls under any meaningful threshold") {
    const Contour base = regular_ngon(128, 20.0);  // curvature 0.05 everywhere
    const ContourPyramid p(base, 3, 2.0);
    CHECK(detect_keypoints(p, 0, 0.1).empty());
}

TEST_CASE("vertex_index maps back to the level index via the octave") {
    const Contour base = rounded_square(32, 20.0);
    const ContourPyramid p(base, 3, 2.0);
    for (const auto& kp : detect_keypoints(p, 0, 0.01)) {
        const size_t level_index = kp.vertex_index >> kp.octave;
        const Contour& level = p.level(kp.octave);
        REQUIRE(level_index < level.size());
        CHECK(kp.position.x == level.at(level_index).x);
        CHECK(kp.position.y == level.at(level_index).y);
        const double k = curvature_at(level, level_index);
        CHECK(k == doctest::Approx(kp.curvature));
    }
}

TEST_CASE("threshold filters weak maxima") {
    const Contour base = rounded_square(32, 20.0);
    const ContourPyramid p(base, 3, 2.0);
    const auto weak = detect_keypoints(p, 0, 0.0);
    const auto strong = detect_keypoints(p, 0, 1.0);
    CHECK(weak.size() >= strong.size());
    for (const auto& kp : strong) CHECK(std::abs(kp.curvature) >= 1.0);
}

TEST_CASE("convenience overload equals pyramid + detect") {
    const Contour base = rounded_square(32, 20.0);
    const auto a = detect_keypoints(base, 3, 2.0, 0.02);
    const ContourPyramid p(base, 3, 2.0);
    auto b = detect_keypoints(p, 0, 0.02);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].vertex_index == b[i].vertex_index);
        CHECK(a[i].octave == b[i].octave);
        CHECK(a[i].curvature == b[i].curvature);
    }
}
