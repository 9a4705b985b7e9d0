#pragma once

#include <cmath>
#include <vector>

#include "lsrec/grid.hpp"
#include "lsrec/pointcloud.hpp"

namespace lsrec::detail {

/// Unit-cell binning of cloud points for windowed and near-neighbor queries.
class PointBins {
public:
    PointBins(const PointCloud& cloud, const GridSpec& spec)
        : cloud_(&cloud), spec_(spec), bins_(spec.size()) {
        for (std::size_t p = 0; p < cloud.points.size(); ++p) {
            int i = clampi(int(std::floor(cloud.points[p][0])), spec_.nx());
            int j = clampi(int(std::floor(cloud.points[p][1])), spec_.ny());
            int k = spec_.rank() == 3 ? clampi(int(std::floor(cloud.points[p][2])), spec_.nz()) : 0;
            bins_[spec_.index(i, j, k)].push_back(p);
        }
    }

    /// Visit indices of all points in the axis-aligned box [lo, hi] (closed).
    template <class Fn>
    void for_each_in_box(const double lo[3], const double hi[3], Fn&& fn) const {
        int i0 = clampi(int(std::floor(lo[0])), spec_.nx());
        int i1 = clampi(int(std::floor(hi[0])), spec_.nx());
        int j0 = clampi(int(std::floor(lo[1])), spec_.ny());
        int j1 = clampi(int(std::floor(hi[1])), spec_.ny());
        int k0 = 0, k1 = 0;
        if (spec_.rank() == 3) {
            k0 = clampi(int(std::floor(lo[2])), spec_.nz());
            k1 = clampi(int(std::floor(hi[2])), spec_.nz());
        }
        for (int i = i0; i <= i1; ++i)
            for (int j = j0; j <= j1; ++j)
                for (int k = k0; k <= k1; ++k)
                    for (std::size_t p : bins_[spec_.index(i, j, k)]) {
                        const auto& pt = cloud_->points[p];
                        if (pt[0] < lo[0] || pt[0] > hi[0] || pt[1] < lo[1] || pt[1] > hi[1])
                            continue;
                        if (spec_.rank() == 3 && (pt[2] < lo[2] || pt[2] > hi[2])) continue;
                        fn(pt);
                    }
    }

private:
    static int clampi(int v, int n) { return v < 0 ? 0 : (v >= n ? n - 1 : v); }

    const PointCloud* cloud_;
    GridSpec spec_;
    std::vector<std::vector<std::size_t>> bins_;
};

}  // namespace lsrec::detail
