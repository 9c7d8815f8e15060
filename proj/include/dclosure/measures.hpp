#pragma once

#include "dclosure/graphs.hpp"

namespace dclosure {

/// Sum over all i, j of |closed_ij - original_ij|. Throws
/// std::invalid_argument on a shape mismatch.
double distortion(const ProximityGraph& original, const ProximityGraph& closed);

/// Sum over i < j of |d_ij - d_ji|; equal entries (including inf/inf) add 0.
double asymmetry(const DistanceGraph& d);
double asymmetry(const MatrixXd& d);

}  // namespace dclosure
