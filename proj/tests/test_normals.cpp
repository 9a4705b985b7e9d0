#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "lsrec/normals.hpp"

using namespace lsrec;

namespace {

// eigenpair residual ||(A - lambda I) v||, the oracle for the closed forms
double eig_residual(const SymMat3& m, int d, double lambda, const std::array<double, 3>& v) {
    double res = 0;
    for (int r = 0; r < d; ++r) {
        double acc = -lambda * v[r];
        for (int c = 0; c < d; ++c) acc += m[r][c] * v[c];
        res += acc * acc;
    }
    return std::sqrt(res);
}

SymMat3 random_sym(std::mt19937& rng, int d) {
    std::uniform_real_distribution<double> dist(-2, 2);
    SymMat3 m{};
    for (int r = 0; r < d; ++r)
        for (int c = r; c < d; ++c) m[r][c] = m[c][r] = dist(rng);
    return m;
}

}  // namespace

TEST_CASE("symmetric eigenvalues: ascending and exact on random matrices") {
    std::mt19937 rng(31);
    for (int d : {2, 3}) {
        for (int trial = 0; trial < 200; ++trial) {
            SymMat3 m = random_sym(rng, d);
            auto eig = sym_eigenvalues(m, d);
            for (int a = 1; a < d; ++a) CHECK(eig[a] >= eig[a - 1] - 1e-12);

            // trace and (for 2x2) determinant are eigenvalue invariants
            double tr = 0, etr = 0;
            for (int a = 0; a < d; ++a) {
                tr += m[a][a];
                etr += eig[a];
            }
            CHECK(tr == doctest::Approx(etr).epsilon(1e-10));
            if (d == 2) {
                double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                CHECK(det == doctest::Approx(eig[0] * eig[1]).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("smallest eigenvector satisfies the eigen equation") {
    std::mt19937 rng(37);
    for (int d : {2, 3}) {
        for (int trial = 0; trial < 200; ++trial) {
            SymMat3 m = random_sym(rng, d);
            auto eig = sym_eigenvalues(m, d);
            if (eig[1] - eig[0] < 1e-3) continue;  // skip near-degenerate draws
            auto v = smallest_eigvec_sym(m, d);
            double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(eig_residual(m, d, eig[0], v) < 1e-8);
        }
    }
}

TEST_CASE("degenerate matrices give a canonical axis") {
    SymMat3 id{};
    for (int a = 0; a < 3; ++a) id[a][a] = 1;
    auto v2 = smallest_eigvec_sym(id, 2);
    CHECK(v2[0] == 0.0);
    CHECK(v2[1] == 1.0);
    auto v3 = smallest_eigvec_sym(id, 3);
    CHECK(v3[2] == 1.0);
}

TEST_CASE("diagonal 3x3 eigenvalues") {
    SymMat3 m{};
    m[0][0] = 3;
    m[1][1] = -1;
    m[2][2] = 2;
    auto eig = sym_eigenvalues(m, 3);
    CHECK(eig[0] == doctest::Approx(-1));
    CHECK(eig[1] == doctest::Approx(2));
    CHECK(eig[2] == doctest::Approx(3));
}

TEST_CASE("horizontal edge data: normals point vertically on the curve") {
    GridSpec g({64, 64});
    PointCloud c{2, {}};
    for (double x = 10; x <= 54; x += 0.5) c.points.push_back({x, 30, 0});

    NormalField nf = estimate_normals(c, g, 4.0);
    for (int i = 16; i <= 48; ++i) {
        std::size_t n = g.index(i, 30, 0);
        CHECK(nf.source[n] == NormalSource::Pca);
        CHECK(std::abs(nf.p_d.at(n, 1)) >= 0.99);
        // sign rule: first nonzero component positive
        double first = std::abs(nf.p_d.at(n, 0)) > 1e-12 ? nf.p_d.at(n, 0) : nf.p_d.at(n, 1);
        CHECK(first > 0);
    }
}

TEST_CASE("too few neighbors falls back to the radial rule") {
    GridSpec g({64, 64});
    PointCloud c{2, {{10, 10, 0}, {11, 10, 0}}};  // 2 points < c_p = 3

    NormalField nf = estimate_normals(c, g, 4.0);
    std::size_t n = g.index(10, 10, 0);
    CHECK(nf.source[n] == NormalSource::Fallback);
    auto ctr = g.center();
    double rx = 10 - ctr[0], ry = 10 - ctr[1];
    double norm = std::hypot(rx, ry);
    rx /= norm;
    ry /= norm;
    if (std::abs(rx) > 1e-12 ? rx < 0 : ry < 0) {
        rx = -rx;
        ry = -ry;
    }
    CHECK(nf.p_d.at(n, 0) == doctest::Approx(rx).epsilon(1e-12));
    CHECK(nf.p_d.at(n, 1) == doctest::Approx(ry).epsilon(1e-12));
}

TEST_CASE("isotropic neighborhoods (eigenvalue tie) fall back") {
    GridSpec g({32, 32});
    // 4-fold symmetric cross around (16,16): covariance is a multiple of I
    PointCloud c{2, {{18, 16, 0}, {14, 16, 0}, {16, 18, 0}, {16, 14, 0}}};
    NormalField nf = estimate_normals(c, g, 4.0);
    CHECK(nf.source[g.index(16, 16, 0)] == NormalSource::Fallback);
}

TEST_CASE("window membership is the closed box |z - x| <= lambda") {
    GridSpec g({32, 32});
    // exactly lambda away plus two distinct anchors: counts as a neighbor
    PointCloud c{2, {{12, 16, 0}, {20, 16, 0}, {16, 16, 0}}};
    NormalField nf = estimate_normals(c, g, 4.0, 3);
    std::size_t n = g.index(16, 16, 0);
    CHECK(nf.source[n] == NormalSource::Pca);  // 3 points in the window
    CHECK(std::abs(nf.p_d.at(n, 1)) == doctest::Approx(1.0));

    // shrink the window: only the center point remains -> fallback
    NormalField small = estimate_normals(c, g, 3.9, 3);
    CHECK(small.source[n] == NormalSource::Fallback);
}

TEST_CASE("c_p default is rank + 1") {
    GridSpec g({32, 32});
    PointCloud c{2, {{16, 16, 0}, {17, 16, 0}, {18, 16, 0}}};
    // 3 points: meets the default 2D threshold exactly
    NormalField nf = estimate_normals(c, g, 4.0);
    CHECK(nf.source[g.index(17, 16, 0)] == NormalSource::Pca);
}

TEST_CASE("3d plane data: normal along z") {
    GridSpec g({24, 24, 24});
    PointCloud c{3, {}};
    for (double x = 6; x <= 18; x += 1.5)
        for (double y = 6; y <= 18; y += 1.5) c.points.push_back({x, y, 12});
    NormalField nf = estimate_normals(c, g, 4.0);
    std::size_t n = g.index(12, 12, 12);
    CHECK(nf.source[n] == NormalSource::Pca);
    CHECK(std::abs(nf.p_d.at(n, 2)) >= 0.999);
    CHECK(nf.p_d.at(n, 2) > 0);  // first (and only) nonzero component positive
}
