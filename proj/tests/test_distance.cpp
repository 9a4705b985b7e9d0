#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "lsrec/distance.hpp"

using namespace lsrec;

TEST_CASE("single on-grid source matches brute force within 2 cells") {
    GridSpec g({64, 64});
    PointCloud c{2, {{30, 20, 0}}};
    DistanceField fs = eikonal_fast_sweep(c, g);
    DistanceField bf = brute_force_distance(c, g);
    double worst = 0;
    for (std::size_t n = 0; n < g.size(); ++n) {
        CHECK(fs.f[n] >= -1e-12);
        worst = std::max(worst, std::abs(fs.f[n] - bf.f[n]));
    }
    CHECK(worst <= 2.0);
    CHECK(fs.f(30, 20) == doctest::Approx(0.0));
}

TEST_CASE("off-grid sources are seeded with their exact distance") {
    GridSpec g({16, 16});
    PointCloud c{2, {{7.25, 8.5, 0}}};
    DistanceField fs = eikonal_fast_sweep(c, g);
    CHECK(fs.f(7, 8) == doctest::Approx(std::hypot(0.25, 0.5)));
    CHECK(fs.f(7, 9) == doctest::Approx(std::hypot(0.25, 0.5)));
    CHECK(fs.f(8, 8) == doctest::Approx(std::hypot(0.75, 0.5)));
}

TEST_CASE("scattered cloud, 2d") {
    GridSpec g({100, 100});
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> pos(10, 90);
    PointCloud c{2, {}};
    for (int i = 0; i < 10; ++i) c.points.push_back({pos(rng), pos(rng), 0});

    DistanceField fs = eikonal_fast_sweep(c, g);
    DistanceField bf = brute_force_distance(c, g);
    double worst = 0;
    for (std::size_t n = 0; n < g.size(); ++n)
        worst = std::max(worst, std::abs(fs.f[n] - bf.f[n]));
    CHECK(worst <= 2.0);
}

TEST_CASE("scattered cloud, 3d") {
    GridSpec g({24, 24, 24});
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> pos(4, 20);
    PointCloud c{3, {}};
    for (int i = 0; i < 8; ++i) c.points.push_back({pos(rng), pos(rng), pos(rng)});

    DistanceField fs = eikonal_fast_sweep(c, g);
    DistanceField bf = brute_force_distance(c, g);
    double worst = 0;
    for (std::size_t n = 0; n < g.size(); ++n)
        worst = std::max(worst, std::abs(fs.f[n] - bf.f[n]));
    CHECK(worst <= 2.0);
}

TEST_CASE("sweeping never undershoots the true distance by more than the seed error") {
    GridSpec g({48, 48});
    PointCloud c{2, {{10.5, 10.5, 0}, {40, 12, 0}}};
    DistanceField fs = eikonal_fast_sweep(c, g);
    DistanceField bf = brute_force_distance(c, g);
    for (std::size_t n = 0; n < g.size(); ++n)
        CHECK(fs.f[n] >= bf.f[n] - 1e-9);  // upwind updates are upper bounds
}

TEST_CASE("weight field modes") {
    GridSpec g({8, 8});
    PointCloud c{2, {{4, 4, 0}}};
    DistanceField df = brute_force_distance(c, g);

    ScalarField ones = weight_field(df, WeightMode::Constant);
    for (std::size_t n = 0; n < g.size(); ++n) CHECK(ones[n] == 1.0);

    ScalarField root = weight_field(df, WeightMode::SqrtF);
    for (std::size_t n = 0; n < g.size(); ++n)
        CHECK(root[n] == doctest::Approx(std::sqrt(df.f[n])));
}

TEST_CASE("empty cloud is rejected") {
    GridSpec g({8, 8});
    PointCloud c{2, {}};
    CHECK_THROWS_AS(eikonal_fast_sweep(c, g), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_distance(c, g), std::invalid_argument);
}
