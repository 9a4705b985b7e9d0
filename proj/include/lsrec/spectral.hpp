#pragma once

#include <complex>
#include <vector>

#include "lsrec/grid.hpp"

namespace lsrec {

/// Unnormalized forward DFT of a real field (row-major, full complex spectrum).
std::vector<std::complex<double>> forward_dft(const ScalarField& f);

/// Inverse DFT with 1/(M*N*P) normalization; returns the full complex result
/// so callers can check imaginary leakage before truncation.
std::vector<std::complex<double>> inverse_dft(const GridSpec& spec,
                                              const std::vector<std::complex<double>>& spectrum);

/// Solve (I - c div^- grad^+) psi = b exactly in the discrete sense.
/// Requires c > 0. The Fourier symbol is 1 + 4c sum_axes sin^2(z/2).
ScalarField solve_scalar_helmholtz(const ScalarField& b, double c);

/// Solve (kappa1 I - kappa2 grad^+(div^- .)) u = s per frequency.
/// 2x2 closed-form inverse in 2D, 3x3 adjugate over determinant in 3D.
/// Requires kappa1 > 0, kappa2 >= 0.
VectorField solve_vector_system(const VectorField& s, double kappa1, double kappa2);

/// Forward operators matching the solvers, for residual checks.
ScalarField apply_scalar_helmholtz(const ScalarField& psi, double c);
VectorField apply_vector_operator(const VectorField& u, double kappa1, double kappa2);

}  // namespace lsrec
