#pragma once

// Numerical thresholds shared across modules. Exact-algebra statements are
// checked against these floating-point floors.
namespace qhf::tol {

/// |det A| must exceed this times ||A||_2^n for A to count as invertible.
inline constexpr double singularity_floor = 1e-13;
/// Relative Frobenius defect ||A - A^dag|| / ||A|| accepted as Hermitian.
inline constexpr double hermiticity = 1e-10;
/// Ceiling on the 2-norm condition number of an eigenvector matrix.
inline constexpr double eigenvector_condition_ceiling = 1e8;
/// Cholesky pivots must exceed this times ||A||_F.
inline constexpr double positivity_floor = 1e-12;
/// Relative residual accepted for A V = V diag(E).
inline constexpr double eigen_residual = 1e-10;
/// Relative commutator ||A e^A - e^A A|| accepted for the matrix exponential.
inline constexpr double exp_commutator = 1e-10;
/// Relative residual for Omega * Omega^{-1} = I.
inline constexpr double dyson_inverse = 1e-10;
/// Quasi-Hermiticity residual accepted as a precondition (Y products, splits).
inline constexpr double quasi_hermiticity_pre = 1e-8;
/// Invariant bound on reduced quasi-Hermiticity of a hybrid split.
inline constexpr double reduced_quasi_hermiticity = 1e-9;
/// Invariant bound on ||Omega_M Omega_H - Omega|| / ||Omega||.
inline constexpr double recomposition = 1e-10;
/// Imaginary parts below this times ||H||_F count as a real spectrum.
inline constexpr double real_spectrum = 1e-9;
/// Relative singular-value cut used for numerical rank.
inline constexpr double rank_threshold = 1e-10;
/// fit_weights accepts a residual below this times ||target||_F.
inline constexpr double family_fit = 1e-8;
/// Dimension cap for the vectorized solution-space computation.
inline constexpr int solution_space_cap = 8;

}  // namespace qhf::tol
