#include "shapebag/curvature.hpp"

#include <cmath>
#include <limits>

#include "shapebag/error.hpp"

namespace shapebag {

namespace {

struct Triple {
    Vec2 a, b, c;
    bool degenerate;  // duplicate vertices
};

Triple neighbor_triple(const Contour& contour, size_t i) {
    const long li = static_cast<long>(i);
    Triple t{contour.at_cyclic(li - 1), contour.at_cyclic(li), contour.at_cyclic(li + 1), false};
    t.degenerate = (t.a == t.b) || (t.b == t.c) || (t.a == t.c);
    return t;
}

double signed_curvature(const Triple& t) {
    const Vec2 ab = t.b - t.a;
    const Vec2 bc = t.c - t.b;
    const double cross = ab.cross(bc);
    if (cross == 0.0) return 0.0;
    const double lab = ab.norm();
    const double lbc = bc.norm();
    const double lca = (t.a - t.c).norm();
    return 2.0 * cross / (lab * lbc * lca);
}

}  // namespace

double curvature_at(const Contour& c, size_t i) {
    if (c.size() < 3) throw_usage("curvature requires at least 3 vertices");
    const Triple t = neighbor_triple(c, i);
    if (t.degenerate) throw_usage("duplicate vertices in curvature triple");
    return signed_curvature(t);
}

std::optional<double> try_curvature_at(const Contour& c, size_t i) {
    if (c.size() < 3) return std::nullopt;
    const Triple t = neighbor_triple(c, i);
    if (t.degenerate) return std::nullopt;
    return signed_curvature(t);
}

namespace {

Vec2 arc_normal(const Triple& t) {
    // Outward side of the travel direction; valid for both windings.
    const Vec2 tangent = (t.c - t.a).normalized();
    const Vec2 outward_hint{tangent.y, -tangent.x};

    const Vec2 u = t.a - t.b;
    const Vec2 v = t.c - t.b;
    if (u.cross(v) == 0.0) return outward_hint;

    // Direction of b relative to the circumcenter, up to sign: the center
    // offset from b is this vector over twice the signed triangle area, so
    // normalizing it needs no division that could overflow near collinearity.
    Vec2 radial = Vec2{u.y * v.squared_norm() - v.y * u.squared_norm(),
                       v.x * u.squared_norm() - u.x * v.squared_norm()}
                      .normalized();
    if (radial.squared_norm() == 0.0) return outward_hint;
    if (radial.dot(outward_hint) < 0.0) radial = radial * -1.0;
    return radial;
}

}  // namespace

Vec2 normal_at_vertex(const Contour& c, size_t i) {
    if (c.size() < 3) throw_usage("normal requires at least 3 vertices");
    const Triple t = neighbor_triple(c, i);
    if (t.degenerate) throw_usage("duplicate vertices in normal triple");
    return arc_normal(t);
}

std::optional<Vec2> try_normal_at_vertex(const Contour& c, size_t i) {
    if (c.size() < 3) return std::nullopt;
    const Triple t = neighbor_triple(c, i);
    if (t.degenerate) return std::nullopt;
    return arc_normal(t);
}

Vec2 normal_at(const Contour& c, const Vec2& p) {
    if (c.size() < 3) throw_usage("normal requires at least 3 vertices");
    size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < c.size(); ++i) {
        const double d2 = (c.at(i) - p).squared_norm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return normal_at_vertex(c, best);
}

}  // namespace shapebag
