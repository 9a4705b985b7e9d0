#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lsrec {

struct PointCloud {
    int dim = 2;  // 2 or 3
    std::vector<std::array<double, 3>> points;  // z unused in 2D

    std::size_t size() const { return points.size(); }
};

/// Synthetic sample sets: a closed 2D curve or a 3D surface sampled uniformly
/// in parameter space, with optional parametric gaps and Gaussian noise.
struct ShapeRecipe {
    std::string shape;                   // circle|ellipse|square|hexagon|pentagon|flower|
                                         // cylinder|torus|box-rail
    std::array<double, 3> center{50, 50, 0};
    double radius = 30;                  // circle / polygon circumradius / cylinder / torus tube
    double radius2 = 15;                 // ellipse minor axis / torus major radius
    double edge = 60;                    // square edge length
    int petals = 3;
    double petal_amp = 8;
    double height = 30;                  // cylinder axial extent
    int count = 200;
    // Gaps are intervals of the primary parameter, normalized to [0,1):
    // curve arc parameter in 2D; axial fraction (cylinder), major angle (torus),
    // path parameter (box-rail) in 3D.
    std::vector<std::pair<double, double>> gaps;
    double sigma = 0;
    std::uint64_t seed = 0;
};

/// Deterministic for a fixed recipe. Gap deletion happens before noise.
PointCloud generate(const ShapeRecipe& recipe);

/// Plain text: one point per line, whitespace-separated floats, '#' comments,
/// dimension inferred from the first data line.
PointCloud load_cloud(const std::string& path);
void save_cloud(const PointCloud& cloud, const std::string& path);

/// Signed implicit residual of the noiseless shape at a point (0 on the shape);
/// used by tests and evaluation. Throws for shapes without a closed form.
double shape_residual(const ShapeRecipe& recipe, const std::array<double, 3>& p);

}  // namespace lsrec
