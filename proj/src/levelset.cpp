#include "lsrec/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lsrec {

namespace {

constexpr double kReinitTau = 0.5;

double box_sdf_1d(double x, double lo, double hi) { return std::max(lo - x, x - hi); }

}  // namespace

SolverState init_state(const PointCloud& cloud, const GridSpec& spec, double pad) {
    if (cloud.points.empty()) throw std::invalid_argument("init_state: empty cloud");
    const int d = spec.rank();
    double lo[3], hi[3];
    for (int a = 0; a < 3; ++a) {
        lo[a] = std::numeric_limits<double>::max();
        hi[a] = std::numeric_limits<double>::lowest();
    }
    for (const auto& p : cloud.points)
        for (int a = 0; a < d; ++a) {
            lo[a] = std::min(lo[a], p[a]);
            hi[a] = std::max(hi[a], p[a]);
        }
    for (int a = 0; a < d; ++a) {
        lo[a] -= pad;
        hi[a] += pad;
        if (lo[a] < 0 || hi[a] > spec.dim(a))
            throw std::invalid_argument("init_state: padded box exceeds the domain");
    }

    SolverState st{ScalarField(spec), VectorField(spec), ScalarField(spec), 0};
    for (int i = 0; i < spec.nx(); ++i)
        for (int j = 0; j < spec.ny(); ++j)
            for (int k = 0; k < spec.nz(); ++k) {
                double q[3] = {box_sdf_1d(i, lo[0], hi[0]), box_sdf_1d(j, lo[1], hi[1]),
                               d == 3 ? box_sdf_1d(k, lo[2], hi[2]) : -1e30};
                double outside = 0, inside = -std::numeric_limits<double>::max();
                for (int a = 0; a < d; ++a) {
                    outside += std::max(q[a], 0.0) * std::max(q[a], 0.0);
                    inside = std::max(inside, q[a]);
                }
                st.psi(i, j, k) = outside > 0 ? std::sqrt(outside) : inside;
            }

    VectorField g = gradient(st.psi, Scheme::Central);
    ScalarField mag = magnitude(g);
    for (std::size_t n = 0; n < spec.size(); ++n) {
        if (mag[n] > kGradGuard) {
            for (int a = 0; a < d; ++a) st.u.at(n, a) = g.at(n, a) / mag[n];
        } else {
            st.u.at(n, d - 1) = 1.0;
        }
    }
    st.q = divergence(st.u, Scheme::Central);
    return st;
}

ScalarField delta_eps(const ScalarField& psi, double eps) {
    if (eps <= 0) throw std::invalid_argument("delta_eps: eps must be positive");
    ScalarField out(psi.spec());
    for (std::size_t n = 0; n < psi.size(); ++n)
        out[n] = eps / (std::numbers::pi * (eps * eps + psi[n] * psi[n]));
    return out;
}

ScalarField reinitialize(const ScalarField& psi, int iters) {
    if (iters < 0) throw std::invalid_argument("reinitialize: iters must be >= 0");
    const GridSpec& g = psi.spec();
    const int d = g.rank();

    // smoothed sign of the input, frozen across iterations
    ScalarField s(g);
    for (std::size_t n = 0; n < g.size(); ++n) s[n] = psi[n] / std::sqrt(psi[n] * psi[n] + 1.0);

    ScalarField phi = psi;
    for (int it = 0; it < iters; ++it) {
        ScalarField fw[3], bw[3];
        for (int a = 0; a < d; ++a) {
            fw[a] = diff(phi, a, Scheme::Forward);
            bw[a] = diff(phi, a, Scheme::Backward);
        }
        ScalarField next = phi;
        for (std::size_t n = 0; n < g.size(); ++n) {
            double grad2 = 0;
            for (int a = 0; a < d; ++a) {
                double dm = bw[a][n], dp = fw[a][n];
                double m, p;
                if (s[n] >= 0) {
                    m = std::max(dm, 0.0);
                    p = std::min(dp, 0.0);
                } else {
                    m = std::min(dm, 0.0);
                    p = std::max(dp, 0.0);
                }
                grad2 += std::max(m * m, p * p);
            }
            next[n] = phi[n] - kReinitTau * s[n] * (std::sqrt(grad2) - 1.0);
        }
        phi = std::move(next);
    }
    return phi;
}

EnergyTerms energy_terms(const ScalarField& psi, const ScalarField& f, const VectorField& p_d,
                         const ScalarField& r, const EnergyWeights& w) {
    const GridSpec& g = psi.spec();
    const int d = g.rank();
    VectorField grad = gradient(psi, Scheme::Central);
    ScalarField mag = magnitude(grad);
    ScalarField del = delta_eps(psi, w.eps);

    // curvature = div(grad psi / max(|grad psi|, guard))
    VectorField unit(g);
    for (std::size_t n = 0; n < g.size(); ++n) {
        double m = std::max(mag[n], kGradGuard);
        for (int a = 0; a < d; ++a) unit.at(n, a) = grad.at(n, a) / m;
    }
    ScalarField kappa = divergence(unit, Scheme::Central);

    EnergyTerms e;
    for (std::size_t n = 0; n < g.size(); ++n) {
        double weight = del[n] * mag[n];
        e.dist += w.eta0 * f[n] * f[n] * weight;
        e.curv += 0.5 * w.eta1 * kappa[n] * kappa[n] * weight;
        double dot = 0;
        for (int a = 0; a < d; ++a) dot += p_d.at(n, a) * unit.at(n, a);
        e.normal += 0.5 * w.eta2 * r[n] * (1.0 - dot * dot) * weight;
    }
    return e;
}

double energy(const ScalarField& psi, const ScalarField& f, const VectorField& p_d,
              const ScalarField& r, const EnergyWeights& w) {
    return energy_terms(psi, f, p_d, r, w).total();
}

}  // namespace lsrec
