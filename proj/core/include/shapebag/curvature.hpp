#pragma once

#include <optional>

#include "shapebag/contour.hpp"

namespace shapebag {

/// Signed curvature (1/pixels) of the circumcircle through vertices
/// i-1, i, i+1 (cyclic). Positive where the contour turns toward the interior
/// (convex for the external winding convention), zero for collinear triples.
/// Throws on duplicate vertices among the triple.
double curvature_at(const Contour& c, size_t i);

/// As curvature_at but returns nullopt for degenerate triples instead of
/// throwing; used by scanning code that must tolerate traced spurs.
std::optional<double> try_curvature_at(const Contour& c, size_t i);

/// Outward unit normal of the circular arc fitted at the contour vertex
/// nearest to p (ties to the lowest index). For locally collinear vertices
/// falls back to the perpendicular of the neighbor chord. "Outward" means
/// away from the foreground, which both winding conventions make the right
/// side of the direction of travel.
Vec2 normal_at(const Contour& c, const Vec2& p);

/// Outward unit normal at a specific vertex index.
Vec2 normal_at_vertex(const Contour& c, size_t i);

/// As normal_at_vertex but returns nullopt for degenerate triples.
std::optional<Vec2> try_normal_at_vertex(const Contour& c, size_t i);

}  // namespace shapebag
