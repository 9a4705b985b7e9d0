#include "lsrec/metrics.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

namespace lsrec {

namespace {

double dist2(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return dx * dx + dy * dy + dz * dz;
}

// max and mean of min-distance from every point of `from` to the set `to`
std::pair<double, double> directed(const std::vector<std::array<double, 3>>& from,
                                   const std::vector<std::array<double, 3>>& to) {
    double worst = 0, sum = 0;
    for (const auto& p : from) {
        double best = std::numeric_limits<double>::max();
        for (const auto& q : to) best = std::min(best, dist2(p, q));
        best = std::sqrt(best);
        worst = std::max(worst, best);
        sum += best;
    }
    return {worst, sum / double(from.size())};
}

}  // namespace

PairwiseMetrics point_set_metrics(const std::vector<std::array<double, 3>>& a,
                                  const std::vector<std::array<double, 3>>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("point_set_metrics: empty point set");
    auto [hab, cab] = directed(a, b);
    auto [hba, cba] = directed(b, a);
    return {std::max(hab, hba), 0.5 * (cab + cba)};
}

std::vector<std::array<double, 3>> sample_shape(const ShapeRecipe& recipe, int count) {
    ShapeRecipe clean = recipe;
    clean.sigma = 0;
    clean.gaps.clear();
    clean.count = count;
    return generate(clean).points;
}

double total_absolute_turning(const Contour& c) {
    if (c.dim != 2) throw std::invalid_argument("total_absolute_turning: 2D contours only");

    auto key = [](double x, double y) {
        return std::pair<std::int64_t, std::int64_t>{std::llround(x * 1e6), std::llround(y * 1e6)};
    };
    // adjacency: endpoint -> incident segment indices
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<int>> adj;
    for (int s = 0; s < int(c.segments.size()); ++s) {
        adj[key(c.segments[s][0], c.segments[s][1])].push_back(s);
        adj[key(c.segments[s][2], c.segments[s][3])].push_back(s);
    }

    std::vector<bool> used(c.segments.size(), false);
    double tv = 0;
    for (int start = 0; start < int(c.segments.size()); ++start) {
        if (used[start]) continue;
        // walk a chain from `start`, accumulating turning angles at joints
        std::vector<std::array<double, 2>> chain;
        chain.push_back({c.segments[start][0], c.segments[start][1]});
        chain.push_back({c.segments[start][2], c.segments[start][3]});
        used[start] = true;
        bool closed = false;
        while (true) {
            auto& tail = chain.back();
            auto it = adj.find(key(tail[0], tail[1]));
            int next = -1;
            if (it != adj.end())
                for (int s : it->second)
                    if (!used[s]) {
                        next = s;
                        break;
                    }
            if (next < 0) break;
            used[next] = true;
            const auto& seg = c.segments[next];
            bool from_first = key(seg[0], seg[1]) == key(tail[0], tail[1]);
            chain.push_back(from_first ? std::array<double, 2>{seg[2], seg[3]}
                                       : std::array<double, 2>{seg[0], seg[1]});
            if (key(chain.back()[0], chain.back()[1]) == key(chain[0][0], chain[0][1])) {
                closed = true;
                break;
            }
        }
        if (closed) chain.push_back(chain[1]);  // wrap one joint past the seam
        for (std::size_t v = 2; v < chain.size(); ++v) {
            double ax = chain[v - 1][0] - chain[v - 2][0], ay = chain[v - 1][1] - chain[v - 2][1];
            double bx = chain[v][0] - chain[v - 1][0], by = chain[v][1] - chain[v - 1][1];
            double na = std::hypot(ax, ay), nb = std::hypot(bx, by);
            if (na < 1e-12 || nb < 1e-12) continue;
            double cross = ax * by - ay * bx, dot = ax * bx + ay * by;
            tv += std::abs(std::atan2(cross, dot));
        }
    }
    return tv;
}

}  // namespace lsrec
