#pragma once

#include <array>
#include <vector>

#include "lsrec/contour.hpp"
#include "lsrec/pointcloud.hpp"

namespace lsrec {

/// Symmetric Hausdorff and mean nearest-neighbor (chamfer) distance between
/// two point sets, brute force. Throws if either set is empty.
struct PairwiseMetrics {
    double hausdorff = 0;
    double chamfer = 0;
};
PairwiseMetrics point_set_metrics(const std::vector<std::array<double, 3>>& a,
                                  const std::vector<std::array<double, 3>>& b);

/// Dense noiseless, gap-free sampling of an analytic shape for use as a
/// metric reference.
std::vector<std::array<double, 3>> sample_shape(const ShapeRecipe& recipe, int count);

/// Sum of absolute exterior (turning) angles over the polylines of a 2D
/// contour, chained by shared endpoints. Equals 2*pi for a convex loop and
/// grows with oscillation; a discrete total variation of the tangent angle.
double total_absolute_turning(const Contour& c);

}  // namespace lsrec
