#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lsrec/pointcloud.hpp"

using namespace lsrec;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("every noiseless shape lies on its implicit surface") {
    for (const char* shape : {"circle", "ellipse", "flower", "square", "hexagon", "pentagon",
                              "cylinder", "torus", "box-rail"}) {
        ShapeRecipe r;
        r.shape = shape;
        r.center = {50, 50, 25};
        r.count = 157;
        if (r.shape == "torus") {
            r.radius = 6;    // tube
            r.radius2 = 18;  // ring, must exceed the tube radius
        }
        if (r.shape == "box-rail") {
            r.radius = 4;  // slim tube so most of it hugs straight rail segments
            r.edge = 40;
            r.height = 24;
        }
        PointCloud c = generate(r);
        CHECK(c.size() == 157);
        CHECK(c.dim == (std::string(shape) == "circle" || std::string(shape) == "ellipse" ||
                                std::string(shape) == "flower" || std::string(shape) == "square" ||
                                std::string(shape) == "hexagon" || std::string(shape) == "pentagon"
                            ? 2
                            : 3));
        if (r.shape == "box-rail") {
            // tube points sit exactly radius from their own rail point, so they can only
            // land inside the tube when a corner cuts the distance short
            int exact = 0;
            for (const auto& p : c.points) {
                double res = shape_residual(r, p);
                CHECK(res < 1e-6);
                CHECK(res > -r.radius - 1e-6);
                if (std::abs(res) < 1e-6) ++exact;
            }
            CHECK(exact * 2 > int(c.size()));  // corners only affect a minority
        } else {
            for (const auto& p : c.points)
                CHECK(std::abs(shape_residual(r, p)) < 1e-6);
        }
    }
}

TEST_CASE("generation is deterministic") {
    ShapeRecipe r;
    r.shape = "ellipse";
    r.sigma = 1.5;
    r.seed = 42;
    PointCloud a = generate(r), b = generate(r);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int c = 0; c < 2; ++c) CHECK(a.points[i][c] == b.points[i][c]);  // bitwise

    r.seed = 43;
    PointCloud d = generate(r);
    bool different = false;
    for (std::size_t i = 0; i < a.size() && !different; ++i)
        different = a.points[i][0] != d.points[i][0];
    CHECK(different);
}

TEST_CASE("gaps delete the matching parameter range before noise") {
    ShapeRecipe r;
    r.shape = "circle";
    r.center = {0, 0, 0};
    r.radius = 10;
    r.count = 400;
    r.gaps = {{0.25, 0.35}};
    PointCloud c = generate(r);
    CHECK(c.size() < 400);
    const double tau = 2.0 * std::acos(-1.0);
    for (const auto& p : c.points) {
        double t = std::atan2(p[1], p[0]) / tau;
        if (t < 0) t += 1.0;
        CHECK(!(t >= 0.25 && t <= 0.35));
    }

    // gap membership is a closed interval: t = 0.25 itself is removed
    r.count = 4;
    r.gaps = {{0.25, 0.25}};
    CHECK(generate(r).size() == 3);
}

TEST_CASE("polygon sampling is arc-length uniform with the first vertex up") {
    ShapeRecipe r;
    r.shape = "hexagon";
    r.center = {50, 50, 0};
    r.radius = 30;
    r.count = 6;
    PointCloud c = generate(r);
    // t=0 is the first vertex, pointing up; with count == nsides every sample
    // is a vertex since all sides have equal length
    CHECK(c.points[0][0] == doctest::Approx(50.0));
    CHECK(c.points[0][1] == doctest::Approx(80.0));
    for (const auto& p : c.points)
        CHECK(std::hypot(p[0] - 50, p[1] - 50) == doctest::Approx(30.0));
}

TEST_CASE("cylinder primary parameter is the axial fraction") {
    ShapeRecipe r;
    r.shape = "cylinder";
    r.center = {25, 25, 25};
    r.radius = 10;
    r.height = 30;
    r.count = 100;
    r.gaps = {{0.4, 0.6}};  // middle band removed
    PointCloud c = generate(r);
    for (const auto& p : c.points) {
        CHECK(std::hypot(p[0] - 25, p[1] - 25) == doctest::Approx(10.0));
        double frac = (p[2] - 25) / 30.0 + 0.5;
        CHECK(!(frac >= 0.4 && frac <= 0.6));
        CHECK(frac >= 0.0);
        CHECK(frac <= 1.0);
    }
}

TEST_CASE("noise displaces only the active dimensions") {
    ShapeRecipe r;
    r.shape = "circle";
    r.sigma = 0.5;
    r.seed = 1;
    PointCloud c = generate(r);
    for (const auto& p : c.points) CHECK(p[2] == 0.0);
}

TEST_CASE("save / load round trip is exact") {
    ShapeRecipe r;
    r.shape = "torus";
    r.center = {25, 25, 25};
    r.radius = 5;
    r.radius2 = 15;
    r.count = 50;
    r.sigma = 0.25;
    r.seed = 3;
    PointCloud c = generate(r);
    std::string path = temp_path("lsrec_cloud_rt.xyz");
    save_cloud(c, path);
    PointCloud back = load_cloud(path);
    REQUIRE(back.dim == 3);
    REQUIRE(back.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        for (int a = 0; a < 3; ++a) CHECK(back.points[i][a] == c.points[i][a]);
    std::remove(path.c_str());
}

TEST_CASE("load_cloud error handling") {
    std::string path = temp_path("lsrec_cloud_err.xyz");

    std::ofstream(path) << "# only a comment\n\n";
    CHECK_THROWS_WITH_AS(load_cloud(path), doctest::Contains("empty point cloud"),
                         std::runtime_error);

    std::ofstream(path) << "1.0 2.0\n3.0 four\n";
    CHECK_THROWS_WITH_AS(load_cloud(path), doctest::Contains("non-numeric"), std::runtime_error);

    std::ofstream(path) << "1.0 2.0\n3.0 4.0 5.0\n";
    CHECK_THROWS_AS(load_cloud(path), std::runtime_error);

    std::ofstream(path) << "1 2 3 4\n";
    CHECK_THROWS_AS(load_cloud(path), std::runtime_error);

    CHECK_THROWS_AS(load_cloud(temp_path("lsrec_missing_file.xyz")), std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("recipe validation") {
    ShapeRecipe r;
    r.shape = "nonagon";
    CHECK_THROWS_AS(generate(r), std::invalid_argument);
    r.shape = "circle";
    r.count = 0;
    CHECK_THROWS_AS(generate(r), std::invalid_argument);
    r.count = 10;
    r.sigma = -1;
    CHECK_THROWS_AS(generate(r), std::invalid_argument);
}
