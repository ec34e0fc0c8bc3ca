#pragma once

#include <vector>

#include "shapebag/contour.hpp"
#include "shapebag/smoothing.hpp"

namespace shapebag {

/// Salient contour locus: a strict local maximum of |curvature| at some
/// octave of the contour scale pyramid.
struct BoundaryKeypoint {
    int contour_id = 0;      ///< index of the source contour within its object
    size_t vertex_index = 0; ///< index into the scale-0 contour (level index * 2^octave)
    int octave = 0;
    double curvature = 0.0;  ///< signed curvature at the detection octave
    Vec2 position;           ///< vertex position at the detection octave (pixel frame)
};

/// Contour scale pyramid: each level is the previous one smoothed with the
/// shrink-corrected kernel and decimated by keeping every second vertex.
/// Construction stops early when a level would fall below `min_vertices`
/// vertices or the kernel no longer fits the contour.
class ContourPyramid {
public:
    static constexpr size_t kMinVertices = 16;

    ContourPyramid(const Contour& base, int n_octaves, double kernel_sigma,
                   size_t min_vertices = kMinVertices);

    int levels() const { return static_cast<int>(levels_.size()); }
    const Contour& level(int octave) const { return levels_[static_cast<size_t>(octave)]; }

private:
    std::vector<Contour> levels_;
};

/// Per octave, marks vertices where |curvature| is a strict local maximum
/// over the +-1 ring neighborhood and at least `min_abs_curvature`.
/// Keypoints of all octaves are kept independently.
std::vector<BoundaryKeypoint> detect_keypoints(const ContourPyramid& pyramid, int contour_id,
                                               double min_abs_curvature);

std::vector<BoundaryKeypoint> detect_keypoints(const Contour& c, int n_octaves,
                                               double kernel_sigma, double min_abs_curvature);

}  // namespace shapebag
