#pragma once

#include <optional>
#include <vector>

#include "shapebag/boundary_keypoints.hpp"
#include "shapebag/contour.hpp"

namespace shapebag {

/// Profile of boundary normals around a keypoint: n_s unit normals sampled
/// at arc-length-equidistant points, expressed in a chord-aligned local
/// frame and concatenated as alternating (x, y) components.
struct NormalProfileDescriptor {
    std::vector<double> values;  ///< length 2 * n_s
    BoundaryKeypoint source;
};

/// Extracts the normal profile for `kp` from `c`, which must be the contour
/// at the keypoint's own octave. Samples n_s points spanning [-span, +span]
/// vertices around the keypoint, equidistant in arc length, and rotates each
/// sampled normal into the frame whose x-axis is the chord from the first to
/// the last sample point. A degenerate chord falls back to the tangent at
/// the keypoint; if that is degenerate too the keypoint is rejected.
///
/// Preconditions: n_s >= 2 and c.size() >= 2 * span + 1 (throws usage error).
std::optional<NormalProfileDescriptor> extract_bon(const Contour& c, const BoundaryKeypoint& kp,
                                                   int n_s, int span);

}  // namespace shapebag
