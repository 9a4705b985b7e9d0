#include "lsrec/pointcloud.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lsrec {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;  // frac of golden ratio, for 2nd parameter

using Vec3 = std::array<double, 3>;

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

struct Polygon {
    std::vector<Vec3> verts;  // closed, in order
    double perimeter = 0;
    std::vector<double> cumlen;  // cumulative edge length, cumlen[0]=0

    explicit Polygon(std::vector<Vec3> v) : verts(std::move(v)) {
        cumlen.push_back(0);
        for (std::size_t e = 0; e < verts.size(); ++e) {
            const Vec3& a = verts[e];
            const Vec3& b = verts[(e + 1) % verts.size()];
            perimeter += std::hypot(b[0] - a[0], b[1] - a[1], b[2] - a[2]);
            cumlen.push_back(perimeter);
        }
    }
    Vec3 at(double t) const {  // t in [0,1), arc-length parameter
        double s = t * perimeter;
        std::size_t e = std::upper_bound(cumlen.begin(), cumlen.end(), s) - cumlen.begin();
        e = std::min(e == 0 ? 0 : e - 1, verts.size() - 1);
        double len = cumlen[e + 1] - cumlen[e];
        double w = len > 0 ? (s - cumlen[e]) / len : 0;
        const Vec3& a = verts[e];
        const Vec3& b = verts[(e + 1) % verts.size()];
        return {a[0] + w * (b[0] - a[0]), a[1] + w * (b[1] - a[1]), a[2] + w * (b[2] - a[2])};
    }
};

double point_segment_dist(const Vec3& p, const Vec3& a, const Vec3& b) {
    Vec3 ab{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    Vec3 ap{p[0] - a[0], p[1] - a[1], p[2] - a[2]};
    double den = ab[0] * ab[0] + ab[1] * ab[1] + ab[2] * ab[2];
    double t = den > 0 ? std::clamp((ap[0] * ab[0] + ap[1] * ab[1] + ap[2] * ab[2]) / den, 0.0, 1.0)
                       : 0.0;
    return std::hypot(ap[0] - t * ab[0], ap[1] - t * ab[1], ap[2] - t * ab[2]);
}

double polygon_dist(const Polygon& poly, const Vec3& p) {
    double best = std::numeric_limits<double>::max();
    for (std::size_t e = 0; e < poly.verts.size(); ++e)
        best = std::min(best,
                        point_segment_dist(p, poly.verts[e], poly.verts[(e + 1) % poly.verts.size()]));
    return best;
}

Polygon regular_polygon(const ShapeRecipe& r, int nsides) {
    std::vector<Vec3> v;
    for (int s = 0; s < nsides; ++s) {
        double a = kTau * s / nsides + std::numbers::pi / 2;  // first vertex points up
        v.push_back({r.center[0] + r.radius * std::cos(a), r.center[1] + r.radius * std::sin(a), 0});
    }
    return Polygon(std::move(v));
}

Polygon square_polygon(const ShapeRecipe& r) {
    double h = r.edge / 2;
    return Polygon({{r.center[0] - h, r.center[1] - h, 0},
                    {r.center[0] + h, r.center[1] - h, 0},
                    {r.center[0] + h, r.center[1] + h, 0},
                    {r.center[0] - h, r.center[1] + h, 0}});
}

Polygon rail_path(const ShapeRecipe& r) {
    double hx = r.edge / 2, hz = r.height / 2;
    return Polygon({{r.center[0] - hx, r.center[1], r.center[2] - hz},
                    {r.center[0] + hx, r.center[1], r.center[2] - hz},
                    {r.center[0] + hx, r.center[1], r.center[2] + hz},
                    {r.center[0] - hx, r.center[1], r.center[2] + hz}});
}

int shape_dim(const std::string& shape) {
    if (shape == "circle" || shape == "ellipse" || shape == "square" || shape == "hexagon" ||
        shape == "pentagon" || shape == "flower")
        return 2;
    if (shape == "cylinder" || shape == "torus" || shape == "box-rail") return 3;
    throw std::invalid_argument("unknown shape: " + shape);
}

// Point at primary parameter t in [0,1); u is the secondary surface parameter.
Vec3 shape_point(const ShapeRecipe& r, double t, double u) {
    double th = kTau * t;
    if (r.shape == "circle")
        return add(r.center, {r.radius * std::cos(th), r.radius * std::sin(th), 0});
    if (r.shape == "ellipse")
        return add(r.center, {r.radius * std::cos(th), r.radius2 * std::sin(th), 0});
    if (r.shape == "flower") {
        double rad = r.radius + r.petal_amp * std::cos(r.petals * th);
        return add(r.center, {rad * std::cos(th), rad * std::sin(th), 0});
    }
    if (r.shape == "square") return square_polygon(r).at(t);
    if (r.shape == "hexagon") return regular_polygon(r, 6).at(t);
    if (r.shape == "pentagon") return regular_polygon(r, 5).at(t);
    if (r.shape == "cylinder") {
        double a = kTau * u;
        return add(r.center,
                   {r.radius * std::cos(a), r.radius * std::sin(a), r.height * (t - 0.5)});
    }
    if (r.shape == "torus") {
        double phi = kTau * u;
        double ring = r.radius2 + r.radius * std::cos(phi);
        return add(r.center, {ring * std::cos(th), ring * std::sin(th), r.radius * std::sin(phi)});
    }
    if (r.shape == "box-rail") {
        Polygon path = rail_path(r);
        Vec3 p0 = path.at(t);
        // tube frame: path lies in the xz-plane, so (tangent x y-axis) and y span the section
        double dt = 1e-5;
        Vec3 p1 = path.at(t + dt < 1 ? t + dt : t + dt - 1);
        Vec3 tan{p1[0] - p0[0], p1[1] - p0[1], p1[2] - p0[2]};
        double tl = std::hypot(tan[0], tan[1], tan[2]);
        for (auto& c : tan) c /= tl > 0 ? tl : 1;
        Vec3 n1{-tan[2], 0, tan[0]};  // tangent rotated 90 deg in xz
        double phi = kTau * u;
        return {p0[0] + r.radius * (std::cos(phi) * n1[0]),
                p0[1] + r.radius * std::sin(phi),
                p0[2] + r.radius * (std::cos(phi) * n1[2])};
    }
    throw std::invalid_argument("unknown shape: " + r.shape);
}

}  // namespace

double shape_residual(const ShapeRecipe& r, const Vec3& p) {
    double dx = p[0] - r.center[0], dy = p[1] - r.center[1], dz = p[2] - r.center[2];
    if (r.shape == "circle") return std::hypot(dx, dy) - r.radius;
    if (r.shape == "ellipse")
        return dx * dx / (r.radius * r.radius) + dy * dy / (r.radius2 * r.radius2) - 1.0;
    if (r.shape == "flower") {
        double th = std::atan2(dy, dx);
        return std::hypot(dx, dy) - (r.radius + r.petal_amp * std::cos(r.petals * th));
    }
    if (r.shape == "square") return polygon_dist(square_polygon(r), p);
    if (r.shape == "hexagon") return polygon_dist(regular_polygon(r, 6), p);
    if (r.shape == "pentagon") return polygon_dist(regular_polygon(r, 5), p);
    if (r.shape == "cylinder") return std::hypot(dx, dy) - r.radius;
    if (r.shape == "torus") return std::hypot(std::hypot(dx, dy) - r.radius2, dz) - r.radius;
    if (r.shape == "box-rail") return polygon_dist(rail_path(r), p) - r.radius;
    throw std::invalid_argument("unknown shape: " + r.shape);
}

PointCloud generate(const ShapeRecipe& recipe) {
    if (recipe.count <= 0) throw std::invalid_argument("generate: count must be positive");
    if (recipe.sigma < 0) throw std::invalid_argument("generate: sigma must be nonnegative");
    PointCloud cloud;
    cloud.dim = shape_dim(recipe.shape);

    for (int i = 0; i < recipe.count; ++i) {
        double t = double(i) / recipe.count;
        bool gapped = false;
        for (const auto& [lo, hi] : recipe.gaps)
            if (t >= lo && t <= hi) {
                gapped = true;
                break;
            }
        if (gapped) continue;
        double u = std::fmod(i * kGolden, 1.0);
        cloud.points.push_back(shape_point(recipe, t, u));
    }

    if (recipe.sigma > 0) {
        std::mt19937_64 rng(recipe.seed);
        std::normal_distribution<double> noise(0.0, recipe.sigma);
        for (auto& p : cloud.points)
            for (int a = 0; a < cloud.dim; ++a) p[a] += noise(rng);
    }
    return cloud;
}

PointCloud load_cloud(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open point cloud file: " + path);
    PointCloud cloud;
    cloud.dim = 0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<double> vals;
        double v;
        while (ls >> v) vals.push_back(v);
        if (!ls.eof())
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": non-numeric token");
        if (vals.empty()) continue;
        if (cloud.dim == 0) {
            if (vals.size() != 2 && vals.size() != 3)
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": expected 2 or 3 coordinates");
            cloud.dim = int(vals.size());
        } else if (int(vals.size()) != cloud.dim) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(cloud.dim) + " coordinates, got " +
                                     std::to_string(vals.size()));
        }
        cloud.points.push_back({vals[0], vals[1], cloud.dim == 3 ? vals[2] : 0.0});
    }
    if (cloud.points.empty()) throw std::runtime_error(path + ": empty point cloud");
    return cloud;
}

void save_cloud(const PointCloud& cloud, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write point cloud file: " + path);
    char buf[64];
    for (const auto& p : cloud.points) {
        for (int a = 0; a < cloud.dim; ++a) {
            std::snprintf(buf, sizeof buf, "%.17g", p[a]);
            out << (a ? " " : "") << buf;
        }
        out << '\n';
    }
}

}  // namespace lsrec
