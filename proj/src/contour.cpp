#include "lsrec/contour.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mc_tables.hpp"

namespace lsrec {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::array<std::int64_t, 3> quantize(double x, double y, double z) {
    auto q = [](double v) { return std::int64_t(std::llround(v * 1e6)); };
    return {q(x), q(y), q(z)};
}

void marching_squares(const ScalarField& psi, Contour& out) {
    const GridSpec& g = psi.spec();
    for (int i = 0; i + 1 < g.nx(); ++i)
        for (int j = 0; j + 1 < g.ny(); ++j) {
            const double v00 = psi(i, j), v10 = psi(i + 1, j);
            const double v11 = psi(i + 1, j + 1), v01 = psi(i, j + 1);
            const bool b0 = v00 < 0, b1 = v10 < 0, b2 = v11 < 0, b3 = v01 < 0;
            if (b0 == b1 && b1 == b2 && b2 == b3) continue;

            // crossing points on the cell edges: bottom, right, top, left
            std::array<double, 2> pt[4];
            bool has[4] = {b0 != b1, b1 != b2, b3 != b2, b0 != b3};
            if (has[0]) pt[0] = {i + v00 / (v00 - v10), double(j)};
            if (has[1]) pt[1] = {double(i + 1), j + v10 / (v10 - v11)};
            if (has[2]) pt[2] = {i + v01 / (v01 - v11), double(j + 1)};
            if (has[3]) pt[3] = {double(i), j + v00 / (v00 - v01)};

            auto emit = [&](int a, int b) {
                out.segments.push_back({pt[a][0], pt[a][1], pt[b][0], pt[b][1]});
            };
            int count = has[0] + has[1] + has[2] + has[3];
            if (count == 2) {
                int e[2], n = 0;
                for (int a = 0; a < 4; ++a)
                    if (has[a]) e[n++] = a;
                emit(e[0], e[1]);
            } else {
                // saddle: resolve the diagonal with the cell-center average
                bool center_inside = v00 + v10 + v11 + v01 < 0;
                if (b0 && b2) {  // inside corners on the main diagonal
                    if (center_inside) {
                        emit(0, 1);
                        emit(2, 3);
                    } else {
                        emit(0, 3);
                        emit(1, 2);
                    }
                } else {  // b1 && b3
                    if (center_inside) {
                        emit(0, 3);
                        emit(1, 2);
                    } else {
                        emit(0, 1);
                        emit(2, 3);
                    }
                }
            }
        }
}

void marching_cubes(const ScalarField& psi, Contour& out) {
    const GridSpec& g = psi.spec();
    // cube corners, Bourke numbering
    static constexpr int corner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                         {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
    static constexpr int edge_ends[12][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
                                             {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};
    // cache interpolated vertices per cube edge: key = origin node index * 3 + axis
    std::map<std::int64_t, int> edge_vertex;

    auto vertex_on_edge = [&](int i, int j, int k, int e) {
        const int* ca = corner[edge_ends[e][0]];
        const int* cb = corner[edge_ends[e][1]];
        int ax = ca[0] + i, ay = ca[1] + j, az = ca[2] + k;
        int bx = cb[0] + i, by = cb[1] + j, bz = cb[2] + k;
        int axis = (ax != bx) ? 0 : (ay != by) ? 1 : 2;
        // canonical origin = lower endpoint along the edge axis
        int ox = std::min(ax, bx), oy = std::min(ay, by), oz = std::min(az, bz);
        std::int64_t key = (std::int64_t(g.index(ox, oy, oz)) * 3) + axis;
        auto it = edge_vertex.find(key);
        if (it != edge_vertex.end()) return it->second;
        double va = psi(ax, ay, az), vb = psi(bx, by, bz);
        double t = va == vb ? 0.5 : va / (va - vb);
        std::array<double, 3> p = {ax + t * (bx - ax), ay + t * (by - ay), az + t * (bz - az)};
        int idx = int(out.vertices.size());
        out.vertices.push_back(p);
        edge_vertex.emplace(key, idx);
        return idx;
    };

    for (int i = 0; i + 1 < g.nx(); ++i)
        for (int j = 0; j + 1 < g.ny(); ++j)
            for (int k = 0; k + 1 < g.nz(); ++k) {
                int code = 0;
                for (int c = 0; c < 8; ++c)
                    if (psi(i + corner[c][0], j + corner[c][1], k + corner[c][2]) < 0)
                        code |= 1 << c;
                if (detail::kMcEdgeTable[code] == 0) continue;
                const int* tris = detail::kMcTriTable[code];
                for (int t = 0; tris[t] != -1; t += 3) {
                    int a = vertex_on_edge(i, j, k, tris[t]);
                    int b = vertex_on_edge(i, j, k, tris[t + 1]);
                    int c = vertex_on_edge(i, j, k, tris[t + 2]);
                    out.faces.push_back({a, b, c});
                }
            }
}

}  // namespace

Contour extract_zero_level(const ScalarField& psi) {
    Contour out;
    out.dim = psi.spec().rank();
    if (out.dim == 2)
        marching_squares(psi, out);
    else
        marching_cubes(psi, out);
    return out;
}

ContourTopology analyze_topology(const Contour& c) {
    ContourTopology topo;
    if (c.dim == 2) {
        std::map<std::array<std::int64_t, 3>, int> ids;
        std::vector<int> degree;
        auto id_of = [&](double x, double y) {
            auto key = quantize(x, y, 0);
            auto [it, inserted] = ids.emplace(key, int(ids.size()));
            if (inserted) degree.push_back(0);
            return it->second;
        };
        std::vector<std::pair<int, int>> edges;
        for (const auto& s : c.segments) {
            int a = id_of(s[0], s[1]), b = id_of(s[2], s[3]);
            if (a == b) continue;  // degenerate saddle sliver
            ++degree[a];
            ++degree[b];
            edges.push_back({a, b});
        }
        if (edges.empty()) return topo;
        UnionFind uf(int(ids.size()));
        for (auto [a, b] : edges) uf.unite(a, b);
        std::map<int, int> roots;
        for (auto [a, b] : edges) roots[uf.find(a)] = 1;
        topo.components = int(roots.size());
        topo.all_closed_loops = true;
        for (int d : degree)
            if (d != 0 && d != 2) topo.all_closed_loops = false;
        return topo;
    }
    if (c.faces.empty()) return topo;
    UnionFind uf(int(c.vertices.size()));
    for (const auto& f : c.faces) {
        uf.unite(f[0], f[1]);
        uf.unite(f[1], f[2]);
    }
    std::map<int, int> roots;
    for (const auto& f : c.faces) roots[uf.find(f[0])] = 1;
    topo.components = int(roots.size());
    return topo;
}

void save_contour_csv(const Contour& c, const std::string& path) {
    if (c.dim != 2) throw std::invalid_argument("save_contour_csv: 2D contours only");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write contour file: " + path);
    out.precision(17);
    for (const auto& s : c.segments) out << s[0] << ',' << s[1] << ',' << s[2] << ',' << s[3] << '\n';
}

Contour load_contour_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open contour file: " + path);
    Contour c;
    c.dim = 2;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (auto& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream ls(line);
        std::array<double, 4> s;
        if (!(ls >> s[0] >> s[1] >> s[2] >> s[3]))
            throw std::runtime_error(path + ": malformed contour line");
        c.segments.push_back(s);
    }
    return c;
}

void save_contour_svg(const Contour& c, const std::string& path, double width, double height) {
    if (c.dim != 2) throw std::invalid_argument("save_contour_svg: 2D contours only");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write svg file: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    for (const auto& s : c.segments)
        out << "  <line x1=\"" << s[0] << "\" y1=\"" << height - s[1] << "\" x2=\"" << s[2]
            << "\" y2=\"" << height - s[3] << "\" stroke=\"black\" stroke-width=\"0.3\"/>\n";
    out << "</svg>\n";
}

void save_contour_obj(const Contour& c, const std::string& path) {
    if (c.dim != 3) throw std::invalid_argument("save_contour_obj: 3D contours only");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write obj file: " + path);
    out.precision(17);
    for (const auto& v : c.vertices) out << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
    for (const auto& f : c.faces)
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

std::vector<std::array<double, 3>> sample_contour(const Contour& c, double spacing) {
    std::vector<std::array<double, 3>> pts;
    if (c.dim == 2) {
        for (const auto& s : c.segments) {
            double len = std::hypot(s[2] - s[0], s[3] - s[1]);
            int n = std::max(1, int(std::ceil(len / spacing)));
            for (int t = 0; t <= n; ++t) {
                double w = double(t) / n;
                pts.push_back({s[0] + w * (s[2] - s[0]), s[1] + w * (s[3] - s[1]), 0});
            }
        }
    } else {
        pts = c.vertices;
        for (const auto& f : c.faces) {
            const auto &a = c.vertices[f[0]], &b = c.vertices[f[1]], &d = c.vertices[f[2]];
            pts.push_back({(a[0] + b[0] + d[0]) / 3, (a[1] + b[1] + d[1]) / 3,
                           (a[2] + b[2] + d[2]) / 3});
        }
    }
    return pts;
}

}  // namespace lsrec
