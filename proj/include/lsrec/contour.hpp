#pragma once

#include <array>
#include <string>
#include <vector>

#include "lsrec/grid.hpp"

namespace lsrec {

/// Zero level set geometry: 2D polyline segments or a 3D triangle mesh.
struct Contour {
    int dim = 2;
    std::vector<std::array<double, 4>> segments;   // 2D: x1 y1 x2 y2
    std::vector<std::array<double, 3>> vertices;   // 3D
    std::vector<std::array<int, 3>> faces;         // 3D, indices into vertices

    bool empty() const { return segments.empty() && faces.empty(); }
};

/// Marching squares (2D) / marching cubes (3D) with linear interpolation.
/// Inside means psi < 0. Cells are swept without periodic wrap.
Contour extract_zero_level(const ScalarField& psi);

/// Number of connected components; for 2D additionally whether every
/// component is a closed loop (each vertex meets exactly two segment ends).
struct ContourTopology {
    int components = 0;
    bool all_closed_loops = false;
};
ContourTopology analyze_topology(const Contour& c);

void save_contour_csv(const Contour& c, const std::string& path);
Contour load_contour_csv(const std::string& path);
void save_contour_svg(const Contour& c, const std::string& path, double width, double height);
void save_contour_obj(const Contour& c, const std::string& path);

/// Points sampled along segments (2D) or triangle vertices (3D), for metrics.
std::vector<std::array<double, 3>> sample_contour(const Contour& c, double spacing = 0.25);

}  // namespace lsrec
