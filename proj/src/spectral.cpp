#include "lsrec/spectral.hpp"

#include <fftw3.h>

#include <cassert>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace lsrec {

namespace {

// FFTW plan creation is not thread safe; plans are cached per grid shape and
// executed under the cache lock.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t n = 0;
};

std::mutex g_fft_mutex;
std::map<std::tuple<int, int, int>, PlanPair>& plan_cache() {
    static std::map<std::tuple<int, int, int>, PlanPair> cache;
    return cache;
}

PlanPair& plans_for(const GridSpec& g) {
    auto key = std::make_tuple(g.nx(), g.ny(), g.nz());
    auto& cache = plan_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    PlanPair p;
    p.n = g.size();
    p.buf = fftw_alloc_complex(p.n);
    if (g.rank() == 2) {
        p.fwd = fftw_plan_dft_2d(g.nx(), g.ny(), p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        p.bwd = fftw_plan_dft_2d(g.nx(), g.ny(), p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
        p.fwd = fftw_plan_dft_3d(g.nx(), g.ny(), g.nz(), p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        p.bwd = fftw_plan_dft_3d(g.nx(), g.ny(), g.nz(), p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    return cache.emplace(key, p).first->second;
}

double half_angle_sin2(int idx, int n) {
    double z = 2.0 * std::numbers::pi * idx / n;
    double s = std::sin(0.5 * z);
    return s * s;
}

std::complex<double> exp_iz(int idx, int n) {
    double z = 2.0 * std::numbers::pi * idx / n;
    return {std::cos(z), std::sin(z)};
}

}  // namespace

std::vector<std::complex<double>> forward_dft(const ScalarField& f) {
    const GridSpec& g = f.spec();
    std::lock_guard lock(g_fft_mutex);
    PlanPair& p = plans_for(g);
    for (std::size_t n = 0; n < p.n; ++n) {
        p.buf[n][0] = f[n];
        p.buf[n][1] = 0.0;
    }
    fftw_execute(p.fwd);
    std::vector<std::complex<double>> out(p.n);
    for (std::size_t n = 0; n < p.n; ++n) out[n] = {p.buf[n][0], p.buf[n][1]};
    return out;
}

std::vector<std::complex<double>> inverse_dft(const GridSpec& spec,
                                              const std::vector<std::complex<double>>& spectrum) {
    std::lock_guard lock(g_fft_mutex);
    PlanPair& p = plans_for(spec);
    assert(spectrum.size() == p.n);
    for (std::size_t n = 0; n < p.n; ++n) {
        p.buf[n][0] = spectrum[n].real();
        p.buf[n][1] = spectrum[n].imag();
    }
    fftw_execute(p.bwd);
    std::vector<std::complex<double>> out(p.n);
    const double scale = 1.0 / double(p.n);
    for (std::size_t n = 0; n < p.n; ++n)
        out[n] = {p.buf[n][0] * scale, p.buf[n][1] * scale};
    return out;
}

ScalarField solve_scalar_helmholtz(const ScalarField& b, double c) {
    if (c <= 0) throw std::invalid_argument("solve_scalar_helmholtz: c must be positive");
    const GridSpec& g = b.spec();
    auto spec = forward_dft(b);
    std::size_t n = 0;
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j)
            for (int k = 0; k < g.nz(); ++k, ++n) {
                double w = 1.0 + 4.0 * c * (half_angle_sin2(i, g.nx()) + half_angle_sin2(j, g.ny()));
                if (g.rank() == 3) w += 4.0 * c * half_angle_sin2(k, g.nz());
                spec[n] /= w;
            }
    auto inv = inverse_dft(g, spec);
    ScalarField out(g);
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = inv[m].real();
    return out;
}

VectorField solve_vector_system(const VectorField& s, double kappa1, double kappa2) {
    if (kappa1 <= 0) throw std::invalid_argument("solve_vector_system: kappa1 must be positive");
    if (kappa2 < 0) throw std::invalid_argument("solve_vector_system: kappa2 must be nonnegative");
    const GridSpec& g = s.spec();
    const int d = g.rank();
    using C = std::complex<double>;

    std::vector<std::vector<C>> shat(d);
    for (int a = 0; a < d; ++a) {
        ScalarField comp(g);
        for (std::size_t n = 0; n < g.size(); ++n) comp[n] = s.at(n, a);
        shat[a] = forward_dft(comp);
    }

    std::vector<std::vector<C>> uhat(d, std::vector<C>(g.size()));
    std::size_t n = 0;
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j)
            for (int k = 0; k < g.nz(); ++k, ++n) {
                // forward-difference symbol per axis
                C fw[3] = {exp_iz(i, g.nx()) - 1.0, exp_iz(j, g.ny()) - 1.0,
                           d == 3 ? exp_iz(k, g.nz()) - 1.0 : C(0)};
                // backward-difference symbol: 1 - exp(-iz) = conj(fw) * (-1) negated
                C bw[3];
                for (int a = 0; a < 3; ++a) bw[a] = -std::conj(fw[a]);

                // A_kl = kappa1 I - kappa2 * fw_k * bw_l
                C A[3][3];
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c) {
                        A[r][c] = -kappa2 * fw[r] * bw[c];
                        if (r == c) A[r][c] += kappa1;
                    }
                if (d == 2) {
                    C det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
                    assert(std::abs(det) > 0);
                    uhat[0][n] = (A[1][1] * shat[0][n] - A[0][1] * shat[1][n]) / det;
                    uhat[1][n] = (-A[1][0] * shat[0][n] + A[0][0] * shat[1][n]) / det;
                } else {
                    C adj[3][3];
                    adj[0][0] = A[1][1] * A[2][2] - A[1][2] * A[2][1];
                    adj[0][1] = A[0][2] * A[2][1] - A[0][1] * A[2][2];
                    adj[0][2] = A[0][1] * A[1][2] - A[0][2] * A[1][1];
                    adj[1][0] = A[1][2] * A[2][0] - A[1][0] * A[2][2];
                    adj[1][1] = A[0][0] * A[2][2] - A[0][2] * A[2][0];
                    adj[1][2] = A[0][2] * A[1][0] - A[0][0] * A[1][2];
                    adj[2][0] = A[1][0] * A[2][1] - A[1][1] * A[2][0];
                    adj[2][1] = A[0][1] * A[2][0] - A[0][0] * A[2][1];
                    adj[2][2] = A[0][0] * A[1][1] - A[0][1] * A[1][0];
                    C det = A[0][0] * adj[0][0] + A[0][1] * adj[1][0] + A[0][2] * adj[2][0];
                    assert(std::abs(det) > 0);
                    for (int r = 0; r < 3; ++r)
                        uhat[r][n] = (adj[r][0] * shat[0][n] + adj[r][1] * shat[1][n] +
                                      adj[r][2] * shat[2][n]) /
                                     det;
                }
            }

    VectorField out(g);
    for (int a = 0; a < d; ++a) {
        auto inv = inverse_dft(g, uhat[a]);
        for (std::size_t m = 0; m < g.size(); ++m) out.at(m, a) = inv[m].real();
    }
    return out;
}

ScalarField apply_scalar_helmholtz(const ScalarField& psi, double c) {
    ScalarField lap = divergence(gradient(psi, Scheme::Forward), Scheme::Backward);
    ScalarField out = psi;
    for (std::size_t n = 0; n < out.size(); ++n) out[n] -= c * lap[n];
    return out;
}

VectorField apply_vector_operator(const VectorField& u, double kappa1, double kappa2) {
    ScalarField div = divergence(u, Scheme::Backward);
    VectorField graddiv = gradient(div, Scheme::Forward);
    VectorField out = u;
    for (std::size_t n = 0; n < u.nodes(); ++n)
        for (int a = 0; a < u.components(); ++a)
            out.at(n, a) = kappa1 * u.at(n, a) - kappa2 * graddiv.at(n, a);
    return out;
}

}  // namespace lsrec
