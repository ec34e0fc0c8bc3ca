#include "shapebag/bon.hpp"

#include <cmath>

#include "shapebag/curvature.hpp"
#include "shapebag/error.hpp"

namespace shapebag {

namespace {

// Nearest-vertex normal, tolerating degenerate triples (traced spurs).
std::optional<Vec2> sample_normal(const Contour& c, const Vec2& p) {
    size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < c.size(); ++i) {
        const double d2 = (c.at(i) - p).squared_norm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return try_normal_at_vertex(c, best);
}

}  // namespace

std::optional<NormalProfileDescriptor> extract_bon(const Contour& c, const BoundaryKeypoint& kp,
                                                   int n_s, int span) {
    if (n_s < 2 || span < 1) throw_usage("profile needs n_s >= 2 and span >= 1");
    if (c.size() < 2 * static_cast<size_t>(span) + 1)
        throw_usage("contour too short for requested profile span");

    const long center = static_cast<long>(kp.vertex_index >> kp.octave);

    // Cumulative arc length over the 2*span segments centered on the keypoint.
    std::vector<double> cum(2 * static_cast<size_t>(span) + 1, 0.0);
    for (long j = 1; j <= 2 * span; ++j) {
        const Vec2 a = c.at_cyclic(center - span + j - 1);
        const Vec2 b = c.at_cyclic(center - span + j);
        cum[static_cast<size_t>(j)] = cum[static_cast<size_t>(j - 1)] + (b - a).norm();
    }
    const double total = cum.back();

    std::vector<Vec2> points(static_cast<size_t>(n_s));
    size_t seg = 0;
    for (int s = 0; s < n_s; ++s) {
        const double target = total * s / (n_s - 1);
        while (seg + 1 < cum.size() - 1 && cum[seg + 1] < target) ++seg;
        const Vec2 a = c.at_cyclic(center - span + static_cast<long>(seg));
        const Vec2 b = c.at_cyclic(center - span + static_cast<long>(seg) + 1);
        const double len = cum[seg + 1] - cum[seg];
        const double t = len > 0.0 ? (target - cum[seg]) / len : 0.0;
        points[static_cast<size_t>(s)] = a + (b - a) * t;
    }

    Vec2 ex = (points.back() - points.front()).normalized();
    if (ex.squared_norm() == 0.0) {
        // Closed-up chord: align with the keypoint tangent instead.
        ex = (c.at_cyclic(center + 1) - c.at_cyclic(center - 1)).normalized();
        if (ex.squared_norm() == 0.0) return std::nullopt;
    }
    const Vec2 ey = ex.perp();

    NormalProfileDescriptor d;
    d.source = kp;
    d.values.reserve(2 * static_cast<size_t>(n_s));
    for (const Vec2& p : points) {
        const auto n = sample_normal(c, p);
        if (!n) return std::nullopt;
        d.values.push_back(n->dot(ex));
        d.values.push_back(n->dot(ey));
    }
    return d;
}

}  // namespace shapebag
