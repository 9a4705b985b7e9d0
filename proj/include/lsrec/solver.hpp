#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lsrec/contour.hpp"
#include "lsrec/distance.hpp"
#include "lsrec/levelset.hpp"
#include "lsrec/normals.hpp"
#include "lsrec/pointcloud.hpp"

namespace lsrec {

/// All knobs of the four-substep iteration. 2D presets tie alpha = 4*gamma1/dt;
/// 3D presets use a fixed alpha.
struct SolverConfig {
    double eta0 = 1, eta1 = 2, eta2 = 1;
    double dt = 0.5;
    double gamma1 = 100, gamma2 = 100;
    double alpha1 = 800, alpha2 = 800;
    double beta1 = 0.1, beta2 = 0.1;
    double eps = 1;
    double lambda = 4;    // normal-estimation window half-width
    int c_p = 0;          // min neighbors for a PCA normal; 0 = rank + 1
    WeightMode r_mode = WeightMode::Constant;
    int max_iters = 100;
    int reinit_iters = 3;
    double tol = 1e-5;    // mean relative energy change over a 10-iteration window
    double pad = 5;       // cells of padding around the cloud box at init
    int sweeps = 50;      // fast-sweeping pass cap

    /// Later stages rerun the loop with some keys overridden (e.g. eta2, dt).
    struct Stage {
        std::vector<std::pair<std::string, std::string>> overrides;
        int iters = 0;
    };
    std::vector<Stage> stages;  // empty = one stage of max_iters

    /// Assign by key name, e.g. set("eta2", "0"). "alpha", "beta", "gamma"
    /// set both members. Throws std::invalid_argument for unknown keys or
    /// unparsable values.
    void set(const std::string& key, const std::string& value);

    /// Throws std::invalid_argument on any violated positivity constraint
    /// or if stage iteration counts exceed max_iters.
    void validate() const;
};

/// Named parameter sets: clean-2d, incomplete-2d, noisy-2d, clean-3d,
/// clean-3d-fine, incomplete-3d, noisy-3d. Throws for unknown names.
SolverConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// psi: semi-implicit screened solve of the distance-term flow with frozen
/// coefficient beta1; u: pointwise inverse of
/// (gamma1 I - dt eta2 r delta_eps |grad psi| p_d p_d^T) applied to gamma1 u;
/// q: gamma2 q / (gamma2 + dt eta1 delta_eps |grad psi|).
void substep1(SolverState& st, const ScalarField& f, const VectorField& p_d, const ScalarField& r,
              const SolverConfig& cfg);

/// Couple (u, q) back to grad psi: spectral solve of
/// ((gamma1 + dt alpha1) I - (gamma2 + dt alpha2) grad div) u = s,
/// then q = div u. psi is unchanged.
void substep2(SolverState& st, const SolverConfig& cfg);

/// Pointwise renormalization of u; zero vectors become the last-axis unit.
void substep3(SolverState& st);

/// psi: screened solve with frozen coefficient beta2 and source
/// delta_eps(psi) div(G grad psi/|grad psi|), with the nonnegative flux
/// weight G = eta1 q^2 + eta2 r (1 - (u.p_d)^2).
void substep4(SolverState& st, const VectorField& p_d, const ScalarField& r,
              const SolverConfig& cfg);

/// Thrown when psi or the energy turns non-finite mid-run.
struct SolverDivergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunResult {
    SolverState state;
    std::vector<EnergyTerms> trace;  // trace[0] = initial energy
    Contour contour;
    int iterations = 0;
};

/// Precomputed per-run inputs: unsigned distance f, weight r, directions p_d.
struct FieldInputs {
    DistanceField dist;
    ScalarField r;
    NormalField normals;
};
FieldInputs prepare_inputs(const PointCloud& cloud, const GridSpec& spec, const SolverConfig& cfg);

/// Full reconstruction: prepare inputs, hypercube init, then per stage
/// {substep1..4, reinitialize, record energy} until the stage iteration
/// budget or the convergence test is hit. `on_iteration` (optional) sees the
/// state after every completed iteration.
RunResult run(const PointCloud& cloud, const GridSpec& spec, const SolverConfig& cfg,
              const std::function<void(const SolverState&, int)>& on_iteration = {});

}  // namespace lsrec
