#include "lsrec/normals.hpp"

#include <algorithm>
#include <cmath>

#include "lsrec/detail/point_bins.hpp"

namespace lsrec {

namespace {

using Vec3 = std::array<double, 3>;

double norm3(const Vec3& v) { return std::hypot(v[0], v[1], v[2]); }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 canonical_last_axis(int d) { return d == 2 ? Vec3{0, 1, 0} : Vec3{0, 0, 1}; }

// Last canonical axis lying (nearly) in the null space of A - lambda*I,
// searched from the last axis down; plain last axis if none qualifies.
Vec3 canonical_in_eigenspace(const SymMat3& m, double lambda, int d, double scale) {
    for (int a = d - 1; a >= 0; --a) {
        double res = 0;
        for (int r = 0; r < d; ++r) {
            double v = m[r][a] - (r == a ? lambda : 0.0);
            res += v * v;
        }
        if (std::sqrt(res) <= 1e-9 * std::max(scale, 1.0)) {
            Vec3 e{0, 0, 0};
            e[a] = 1;
            return e;
        }
    }
    return canonical_last_axis(d);
}

}  // namespace

std::array<double, 3> sym_eigenvalues(const SymMat3& m, int d) {
    if (d == 2) {
        double mean = 0.5 * (m[0][0] + m[1][1]);
        double disc = std::hypot(0.5 * (m[0][0] - m[1][1]), m[0][1]);
        return {mean - disc, mean + disc, 0};
    }
    double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    if (p1 == 0) {
        std::array<double, 3> e{m[0][0], m[1][1], m[2][2]};
        std::sort(e.begin(), e.end());
        return e;
    }
    double p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) +
                (m[2][2] - q) * (m[2][2] - q) + 2.0 * p1;
    double p = std::sqrt(p2 / 6.0);
    SymMat3 b;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) b[r][c] = (m[r][c] - (r == c ? q : 0.0)) / p;
    double detb = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                  b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                  b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    double r = std::clamp(detb / 2.0, -1.0, 1.0);
    double phi = std::acos(r) / 3.0;
    double e_hi = q + 2.0 * p * std::cos(phi);
    double e_lo = q + 2.0 * p * std::cos(phi + 2.0 * std::acos(-1.0) / 3.0);
    return {e_lo, 3.0 * q - e_hi - e_lo, e_hi};
}

std::array<double, 3> smallest_eigvec_sym(const SymMat3& m, int d) {
    auto eig = sym_eigenvalues(m, d);
    double lambda = eig[0];
    double scale = std::max({std::abs(eig[0]), std::abs(eig[d - 1]), 0.0});

    if (d == 2) {
        double a = m[0][0] - lambda, b = m[0][1], c = m[1][1] - lambda;
        // rows of A - lambda I are (a, b) and (b, c); eigenvector is orthogonal
        Vec3 v1{-b, a, 0}, v2{-c, b, 0};
        Vec3 v = std::hypot(v1[0], v1[1]) >= std::hypot(v2[0], v2[1]) ? v1 : v2;
        double n = std::hypot(v[0], v[1]);
        if (n <= 1e-12 * std::max(scale, 1.0)) return canonical_in_eigenspace(m, lambda, 2, scale);
        return {v[0] / n, v[1] / n, 0};
    }

    Vec3 rows[3];
    for (int r = 0; r < 3; ++r)
        rows[r] = {m[r][0] - (r == 0 ? lambda : 0.0), m[r][1] - (r == 1 ? lambda : 0.0),
                   m[r][2] - (r == 2 ? lambda : 0.0)};
    Vec3 cand[3] = {cross(rows[0], rows[1]), cross(rows[0], rows[2]), cross(rows[1], rows[2])};
    Vec3 best = cand[0];
    for (int c = 1; c < 3; ++c)
        if (norm3(cand[c]) > norm3(best)) best = cand[c];
    double n = norm3(best);
    double s2 = std::max(scale * scale, 1.0);
    if (n <= 1e-12 * s2) return canonical_in_eigenspace(m, lambda, 3, scale);
    return {best[0] / n, best[1] / n, best[2] / n};
}

NormalField estimate_normals(const PointCloud& cloud, const GridSpec& spec, double lambda,
                             int c_p) {
    const int d = spec.rank();
    if (c_p <= 0) c_p = d + 1;
    NormalField nf{VectorField(spec), std::vector<NormalSource>(spec.size(), NormalSource::Pca)};
    detail::PointBins bins(cloud, spec);
    const Vec3 xbar = spec.center();

    for (int i = 0; i < spec.nx(); ++i)
        for (int j = 0; j < spec.ny(); ++j)
            for (int k = 0; k < spec.nz(); ++k) {
                const std::size_t node = spec.index(i, j, k);
                const double x[3] = {double(i), double(j), double(k)};
                double lo[3] = {x[0] - lambda, x[1] - lambda, x[2] - lambda};
                double hi[3] = {x[0] + lambda, x[1] + lambda, x[2] + lambda};

                int count = 0;
                double sum[3] = {0, 0, 0};
                double sq[3][3] = {};
                bins.for_each_in_box(lo, hi, [&](const Vec3& p) {
                    ++count;
                    for (int a = 0; a < d; ++a) {
                        sum[a] += p[a];
                        for (int b = 0; b < d; ++b) sq[a][b] += p[a] * p[b];
                    }
                });

                Vec3 v;
                bool fallback = count < c_p;
                if (!fallback) {
                    SymMat3 cov{};
                    for (int a = 0; a < d; ++a)
                        for (int b = 0; b < d; ++b)
                            cov[a][b] = sq[a][b] - sum[a] * sum[b] / count;
                    auto eig = sym_eigenvalues(cov, d);
                    // a tie of the two smallest eigenvalues leaves the direction
                    // undefined; use the radial rule instead
                    double scale = std::max(std::abs(eig[d - 1]), 1.0);
                    if (eig[1] - eig[0] <= 1e-9 * scale)
                        fallback = true;
                    else
                        v = smallest_eigvec_sym(cov, d);
                }
                if (fallback) {
                    nf.source[node] = NormalSource::Fallback;
                    Vec3 r{x[0] - xbar[0], x[1] - xbar[1], d == 3 ? x[2] - xbar[2] : 0.0};
                    double n = norm3(r);
                    v = n > 1e-12 ? Vec3{r[0] / n, r[1] / n, r[2] / n} : canonical_last_axis(d);
                }
                // reproducible sign: first nonzero component positive
                for (int a = 0; a < d; ++a) {
                    if (std::abs(v[a]) <= 1e-12) continue;
                    if (v[a] < 0)
                        for (int b = 0; b < d; ++b) v[b] = -v[b];
                    break;
                }
                for (int a = 0; a < d; ++a) nf.p_d.at(node, a) = v[a];
            }
    return nf;
}

}  // namespace lsrec
