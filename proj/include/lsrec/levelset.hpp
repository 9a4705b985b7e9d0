#pragma once

#include "lsrec/grid.hpp"
#include "lsrec/pointcloud.hpp"

namespace lsrec {

/// Quotients by the gradient magnitude use max(|grad|, kGradGuard).
inline constexpr double kGradGuard = 1e-8;

/// The evolving triple: level set psi, unit direction u ~ grad psi/|grad psi|,
/// and q ~ div(grad psi/|grad psi|).
struct SolverState {
    ScalarField psi;
    VectorField u;
    ScalarField q;
    int iteration = 0;
};

/// Hypercube initialization: psi0 is the exact signed distance to the
/// axis-aligned cloud bounding box padded by `pad` cells (negative inside);
/// u0 = normalized central gradient, q0 = central divergence of u0.
SolverState init_state(const PointCloud& cloud, const GridSpec& spec, double pad);

/// Smoothed delta: eps / (pi (eps^2 + psi^2)). Requires eps > 0.
ScalarField delta_eps(const ScalarField& psi, double eps);

/// Explicit upwind redistancing steps for phi_tau = -sign(psi)(|grad phi| - 1)
/// with Godunov |grad phi|, smoothed sign psi/sqrt(psi^2 + 1), tau = 0.5.
ScalarField reinitialize(const ScalarField& psi, int iters);

struct EnergyWeights {
    double eta0 = 1, eta1 = 0, eta2 = 0;
    double eps = 1;
};

struct EnergyTerms {
    double dist = 0, curv = 0, normal = 0;
    double total() const { return dist + curv + normal; }
};

/// Discrete energy: sum over nodes of
///   eta0 f^2 delta_eps |grad psi| + eta1/2 kappa^2 delta_eps |grad psi|
///   + eta2/2 r (1 - |p_d . grad psi/|grad psi||^2) delta_eps |grad psi|
/// with central differences and kappa = div(grad psi/|grad psi|).
EnergyTerms energy_terms(const ScalarField& psi, const ScalarField& f, const VectorField& p_d,
                         const ScalarField& r, const EnergyWeights& w);
double energy(const ScalarField& psi, const ScalarField& f, const VectorField& p_d,
              const ScalarField& r, const EnergyWeights& w);

}  // namespace lsrec
