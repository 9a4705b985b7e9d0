#pragma once

#include "lsrec/grid.hpp"
#include "lsrec/pointcloud.hpp"

namespace lsrec {

/// Unsigned distance to the point cloud, in grid cells.
struct DistanceField {
    ScalarField f;
};

/// Godunov upwind fast sweeping for |grad f| = 1 with f = 0 on the cloud.
/// Non-periodic metric. Each pass runs all 2^d axis-direction orderings;
/// passes repeat until max update < 1e-6 or `max_passes` is reached.
/// Nodes within one cell of a cloud point are frozen at their exact distance.
DistanceField eikonal_fast_sweep(const PointCloud& cloud, const GridSpec& spec,
                                 int max_passes = 50);

/// Exact min Euclidean distance at every node; O(#nodes * #points) oracle.
DistanceField brute_force_distance(const PointCloud& cloud, const GridSpec& spec);

enum class WeightMode { Constant, SqrtF };

/// r(x) = 1 everywhere, or r(x) = sqrt(f(x)) pointwise.
ScalarField weight_field(const DistanceField& f, WeightMode mode);

}  // namespace lsrec
