#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lsrec/grid.hpp"
#include "lsrec/pointcloud.hpp"

namespace lsrec {

enum class NormalSource : std::uint8_t { Pca = 0, Fallback = 1 };

/// Per-node estimated surface direction, unit norm everywhere.
struct NormalField {
    VectorField p_d;
    std::vector<NormalSource> source;
};

using SymMat3 = std::array<std::array<double, 3>, 3>;

/// Eigenvalues of the leading d x d block, ascending. d = 2 or 3.
std::array<double, 3> sym_eigenvalues(const SymMat3& m, int d);

/// Unit eigenvector for the minimal eigenvalue. Ties resolve to the last
/// canonical axis. Closed-form: angle formula (2D), characteristic cubic plus
/// cross-product extraction (3D).
std::array<double, 3> smallest_eigvec_sym(const SymMat3& m, int d);

/// PCA direction field over the grid. At nodes whose window
/// |z_k - x_k| <= lambda (closed, per axis) holds >= c_p points, p_d is the
/// smallest-eigenvalue unit eigenvector of the local covariance; elsewhere the
/// radial fallback (x - center)/|x - center|. Degenerate covariance (tied
/// smallest eigenvalues) also falls back. c_p <= 0 selects the default d + 1.
/// Sign convention: first nonzero component positive.
NormalField estimate_normals(const PointCloud& cloud, const GridSpec& spec, double lambda,
                             int c_p = 0);

}  // namespace lsrec
