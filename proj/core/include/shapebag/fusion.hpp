#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shapebag/histograms.hpp"

namespace shapebag {

/// d = (1 - w) * dt + w * ds. Both inputs must be nonnegative, w in [0, 1].
double fused_distance(double dt, double ds, double w);

enum class FusionObjective {
    rank1,   ///< rank-1 accuracy of warped queries against the gallery
    margin,  ///< mean inter-class minus mean intra-class distance (linear in w,
             ///< so its optimum sits at an endpoint; kept for comparison)
};

FusionObjective fusion_objective_from_name(const std::string& name);
const char* fusion_objective_name(FusionObjective o);

/// Learned fusion weight plus the audit trail of the grid search.
struct FusionModel {
    double w = 0.5;
    std::vector<double> grid;
    std::vector<double> objective_values;
    FusionObjective objective = FusionObjective::rank1;
    int n_warps_per_image = 0;
    double warp_magnitude = 0.0;
    uint64_t seed = 0;

    bool operator==(const FusionModel&) const = default;
};

/// Candidates {0, step, 2*step, ..., 1}; step must divide 1 evenly.
std::vector<double> make_weight_grid(double grid_step);

/// Both modality histograms of one object or query view.
struct SignaturePair {
    WordHistogram texture;
    WordHistogram shape;
};

/// Grid search for the fusion weight: evaluates the objective for every
/// candidate and picks the argmax, breaking ties toward 0.5 and then toward
/// the smaller weight. warped_queries[i] are pseudo-views of gallery[i].
/// The provenance arguments (n_warps, magnitude, seed) are stamped into the
/// returned model unchanged.
FusionModel learn_weight(const std::vector<SignaturePair>& gallery,
                         const std::vector<std::vector<SignaturePair>>& warped_queries,
                         double grid_step, FusionObjective objective = FusionObjective::rank1,
                         int n_warps_per_image = 0, double warp_magnitude = 0.0,
                         uint64_t seed = 0);

/// Text key=value block embedded in the index file.
std::string serialize_fusion_model(const FusionModel& m);
FusionModel parse_fusion_model(const std::string& block);

}  // namespace shapebag
