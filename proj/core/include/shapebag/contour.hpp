#pragma once

#include <vector>

#include "shapebag/geometry.hpp"
#include "shapebag/image.hpp"

namespace shapebag {

enum class ContourKind { external, internal };

/// Closed polyline of 2D vertices (implicit wrap from last back to first).
/// External contours are wound with positive signed area, internal ones
/// negative.
struct Contour {
    std::vector<Vec2> vertices;
    ContourKind kind = ContourKind::external;

    size_t size() const { return vertices.size(); }

    const Vec2& at(size_t i) const { return vertices[i]; }
    /// Cyclic access: any signed offset is wrapped into range.
    const Vec2& at_cyclic(long i) const {
        const long n = static_cast<long>(vertices.size());
        long m = i % n;
        if (m < 0) m += n;
        return vertices[static_cast<size_t>(m)];
    }

    /// Shoelace formula; positive for the external winding convention.
    double signed_area() const;
    double circumference() const;
    Vec2 centroid() const;
};

/// Traces one external contour per 8-connected foreground component and one
/// internal contour per 4-connected background hole, using Moore-neighbor
/// tracing with Jacob's stopping criterion. Vertices are foreground pixel
/// centers. Contours with fewer than max(min_length, 3) vertices are
/// discarded. An empty mask yields an empty list.
std::vector<Contour> trace_boundaries(const BinaryMask& mask, size_t min_length = 16);

}  // namespace shapebag
