#include "lsrec/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lsrec/detail/point_bins.hpp"

namespace lsrec {

namespace {

constexpr double kFar = 1e10;
constexpr double kConvergedTol = 1e-6;

// Godunov update for |grad f| = 1 with unit spacing, given the sorted
// per-axis neighbor minima (kFar for missing axes).
double godunov_solve(double a, double b, double c, int d) {
    double v[3] = {a, b, c};
    std::sort(v, v + d);
    double x = v[0] + 1.0;
    if (d >= 2 && x > v[1]) {
        double diff = v[0] - v[1];
        x = 0.5 * (v[0] + v[1] + std::sqrt(2.0 - diff * diff));
        if (d == 3 && x > v[2]) {
            double s = v[0] + v[1] + v[2];
            double s2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
            x = (s + std::sqrt(s * s - 3.0 * (s2 - 1.0))) / 3.0;
        }
    }
    return x;
}

}  // namespace

DistanceField brute_force_distance(const PointCloud& cloud, const GridSpec& spec) {
    if (cloud.points.empty()) throw std::invalid_argument("brute_force_distance: empty cloud");
    ScalarField f(spec);
    for (int i = 0; i < spec.nx(); ++i)
        for (int j = 0; j < spec.ny(); ++j)
            for (int k = 0; k < spec.nz(); ++k) {
                double best = std::numeric_limits<double>::max();
                for (const auto& p : cloud.points) {
                    double dx = p[0] - i, dy = p[1] - j;
                    double dz = spec.rank() == 3 ? p[2] - k : 0.0;
                    best = std::min(best, dx * dx + dy * dy + dz * dz);
                }
                f(i, j, k) = std::sqrt(best);
            }
    return {std::move(f)};
}

DistanceField eikonal_fast_sweep(const PointCloud& cloud, const GridSpec& spec, int max_passes) {
    if (cloud.points.empty()) throw std::invalid_argument("eikonal_fast_sweep: empty cloud");
    const int d = spec.rank();
    ScalarField f(spec, kFar);
    std::vector<char> frozen(spec.size(), 0);

    // Seed every node within one cell of a cloud point with its exact distance.
    detail::PointBins bins(cloud, spec);
    for (const auto& p : cloud.points) {
        int i0 = std::max(0, int(std::floor(p[0] - 1)));
        int i1 = std::min(spec.nx() - 1, int(std::ceil(p[0] + 1)));
        int j0 = std::max(0, int(std::floor(p[1] - 1)));
        int j1 = std::min(spec.ny() - 1, int(std::ceil(p[1] + 1)));
        int k0 = 0, k1 = 0;
        if (d == 3) {
            k0 = std::max(0, int(std::floor(p[2] - 1)));
            k1 = std::min(spec.nz() - 1, int(std::ceil(p[2] + 1)));
        }
        for (int i = i0; i <= i1; ++i)
            for (int j = j0; j <= j1; ++j)
                for (int k = k0; k <= k1; ++k) {
                    std::size_t n = spec.index(i, j, k);
                    if (frozen[n]) continue;
                    double dx = p[0] - i, dy = p[1] - j, dz = d == 3 ? p[2] - k : 0.0;
                    if (dx * dx + dy * dy + dz * dz > 1.0) continue;
                    // exact distance to the nearest cloud point, found via bins
                    double best = std::numeric_limits<double>::max();
                    double lo[3] = {i - 2.0, j - 2.0, k - 2.0};
                    double hi[3] = {i + 2.0, j + 2.0, k + 2.0};
                    bins.for_each_in_box(lo, hi, [&](const std::array<double, 3>& q) {
                        double ex = q[0] - i, ey = q[1] - j, ez = d == 3 ? q[2] - k : 0.0;
                        best = std::min(best, ex * ex + ey * ey + ez * ez);
                    });
                    f(i, j, k) = std::sqrt(best);
                    frozen[n] = 1;
                }
    }

    const int nx = spec.nx(), ny = spec.ny(), nz = spec.nz();
    auto neighbor_min = [&](int i, int j, int k, int axis) {
        double lo = kFar, hi = kFar;
        if (axis == 0) {
            if (i > 0) lo = f(i - 1, j, k);
            if (i < nx - 1) hi = f(i + 1, j, k);
        } else if (axis == 1) {
            if (j > 0) lo = f(i, j - 1, k);
            if (j < ny - 1) hi = f(i, j + 1, k);
        } else {
            if (k > 0) lo = f(i, j, k - 1);
            if (k < nz - 1) hi = f(i, j, k + 1);
        }
        return std::min(lo, hi);
    };

    for (int pass = 0; pass < max_passes; ++pass) {
        double max_update = 0;
        for (int ord = 0; ord < (1 << d); ++ord) {
            const bool xrev = ord & 1, yrev = ord & 2, zrev = ord & 4;
            for (int ix = 0; ix < nx; ++ix)
                for (int iy = 0; iy < ny; ++iy)
                    for (int iz = 0; iz < nz; ++iz) {
                        int i = xrev ? nx - 1 - ix : ix;
                        int j = yrev ? ny - 1 - iy : iy;
                        int k = zrev ? nz - 1 - iz : iz;
                        std::size_t n = spec.index(i, j, k);
                        if (frozen[n]) continue;
                        double a = neighbor_min(i, j, k, 0);
                        double b = neighbor_min(i, j, k, 1);
                        double c = d == 3 ? neighbor_min(i, j, k, 2) : kFar;
                        double x = godunov_solve(a, b, c, d);
                        if (x < f[n]) {
                            max_update = std::max(max_update, f[n] - x);
                            f[n] = x;
                        }
                    }
        }
        if (max_update < kConvergedTol) break;
    }
    return {std::move(f)};
}

ScalarField weight_field(const DistanceField& df, WeightMode mode) {
    ScalarField r(df.f.spec(), 1.0);
    if (mode == WeightMode::SqrtF)
        for (std::size_t n = 0; n < r.size(); ++n) r[n] = std::sqrt(std::max(0.0, df.f[n]));
    return r;
}

}  // namespace lsrec
