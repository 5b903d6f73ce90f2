#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qhf/golden_section.hpp"
#include "qhf/hermitization.hpp"

namespace qhf {

/// Omega = Omega_M Omega_H together with the interpolative Hamiltonian
/// H_H = Omega_H H Omega_H^{-1} and the reduced metric Theta_M = Omega_M^dag Omega_M.
struct HybridSplit {
  DysonMap omega_m;
  DysonMap omega_h;
  DenseMatrix h_h;
  MetricCertificate theta_m;
  double recomposition_residual;
  double reduced_qh_residual;
  /// Interpolation parameter; set only for the power family.
  std::optional<double> mu;
};

struct SplitCost {
  std::optional<double> mu;
  double non_hermiticity;
  double metric_condition;
  double total;
};

/// Omega = L D U with L unit lower, D diagonal, U unit upper.
struct LduFactors {
  DenseMatrix lower;
  DenseMatrix diagonal;
  DenseMatrix upper;
};

/// LDU without pivoting. Throws PivotFailure at the first leading principal
/// minor whose pivot falls below the singularity floor.
inline LduFactors ldu_decompose(const DenseMatrix& a) {
  const Index n = a.dim();
  const double floor = tol::singularity_floor * spectral_norm(a);
  DenseMatrix::Storage w = a.eigen();
  for (Index k = 0; k < n; ++k) {
    const Complex pivot = w(k, k);
    if (!(std::abs(pivot) > floor)) {
      throw PivotFailure(static_cast<std::size_t>(k),
                         "leading principal minor " + std::to_string(k + 1) + " vanishes");
    }
    for (Index i = k + 1; i < n; ++i) {
      w(i, k) /= pivot;
      for (Index j = k + 1; j < n; ++j) w(i, j) -= w(i, k) * w(k, j);
    }
  }
  DenseMatrix::Storage l = DenseMatrix::Storage::Identity(n, n);
  DenseMatrix::Storage d = DenseMatrix::Storage::Zero(n, n);
  DenseMatrix::Storage u = DenseMatrix::Storage::Identity(n, n);
  for (Index i = 0; i < n; ++i) {
    d(i, i) = w(i, i);
    for (Index j = 0; j < i; ++j) l(i, j) = w(i, j);
    for (Index j = i + 1; j < n; ++j) u(i, j) = w(i, j) / w(i, i);
  }
  return LduFactors{DenseMatrix(std::move(l)), DenseMatrix(std::move(d)), DenseMatrix(std::move(u))};
}

/// Builds a split from its two factors and checks every HybridSplit invariant.
inline HybridSplit assemble_split(const DenseMatrix& hamiltonian, const DenseMatrix& omega,
                                  DysonMap omega_m, DysonMap omega_h,
                                  std::optional<double> mu = std::nullopt) {
  require_same_dim(hamiltonian, omega, "hybrid split");
  require_same_dim(omega, omega_m.omega(), "hybrid split");
  require_same_dim(omega, omega_h.omega(), "hybrid split");

  const double recomposition = relative_difference(omega_m.omega() * omega_h.omega(), omega);
  if (!(recomposition < tol::recomposition)) {
    throw Error(ErrorKind::IllConditionedMap,
                "Omega_M Omega_H misses Omega by " + std::to_string(recomposition));
  }
  DenseMatrix h_h = omega_h.omega() * hamiltonian * omega_h.inverse();
  MetricCertificate theta_m = metric_from_dyson(omega_m);
  const double reduced = quasi_hermiticity_residual(h_h, theta_m);
  if (!(reduced < tol::reduced_quasi_hermiticity)) {
    throw Error(ErrorKind::NotQuasiHermitian,
                "reduced quasi-Hermiticity residual " + std::to_string(reduced));
  }
  return HybridSplit{std::move(omega_m), std::move(omega_h), std::move(h_h), std::move(theta_m),
                     recomposition,      reduced,            mu};
}

/// Omega_M = L D, Omega_H = U from the pivot-free LDU factorization of Omega.
inline HybridSplit split_triangular(const DenseMatrix& hamiltonian, const DysonMap& map) {
  const LduFactors f = ldu_decompose(map.omega());
  return assemble_split(hamiltonian, map.omega(), DysonMap(f.lower * f.diagonal),
                        DysonMap(f.upper));
}

/// Power family through the Hermitian root Omega = Theta^{1/2}:
/// Omega_M = Theta^{mu/2}, Omega_H = Theta^{(1-mu)/2}. mu = 0 is the pure OT
/// endpoint, mu = 1 the pure MA endpoint.
inline HybridSplit split_power(const DenseMatrix& hamiltonian, const MetricCertificate& theta,
                               double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw Error(ErrorKind::MuOutOfRange, "mu = " + std::to_string(mu) + " outside [0, 1]");
  }
  require_same_dim(hamiltonian, theta.theta(), "split_power");
  require_quasi_hermitian(hamiltonian, theta, "split_power");
  const DenseMatrix& t = theta.theta();
  return assemble_split(hamiltonian, matrix_power(t, 0.5), DysonMap(matrix_power(t, mu / 2.0)),
                        DysonMap(matrix_power(t, (1.0 - mu) / 2.0)), mu);
}

/// Omega_M H_H Omega_M^{-1}, which equals Omega H Omega^{-1}.
inline Hermitized hybrid_hermitize(const HybridSplit& split) {
  DenseMatrix out = split.omega_m.omega() * split.h_h * split.omega_m.inverse();
  const double defect = hermiticity_defect(out);
  return Hermitized{std::move(out), defect};
}

/// total = w_h * ||H_H - H_H^dag||/||H_H|| + w_m * log10 cond(Theta_M)
inline SplitCost split_cost(const HybridSplit& split, double w_h, double w_m) {
  if (!(w_h >= 0.0) || !(w_m >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "cost weights must be nonnegative");
  }
  const auto ev = hermitian_eigenvalues(split.theta_m.theta());
  const double cond = ev.back() / ev.front();
  const double non_herm = hermiticity_defect(split.h_h);
  return SplitCost{split.mu, non_herm, cond, w_h * non_herm + w_m * std::log10(cond)};
}

struct SplitOptimum {
  double mu_star;
  SplitCost cost;
  /// Costs at mu = k / (grid_points - 1), in grid order.
  std::vector<SplitCost> grid;
  double bracket_lo;
  double bracket_hi;
  LineMinimum refined;
};

inline constexpr int split_grid_points = 33;
inline constexpr double split_refine_width = 1e-6;

/// Minimizes split_cost over the power family: a 33-point grid on [0, 1],
/// then golden-section refinement around the best grid point. Ties go to
/// the smaller mu.
inline SplitOptimum optimize_split(const DenseMatrix& hamiltonian, const MetricCertificate& theta,
                                   double w_h, double w_m) {
  require_quasi_hermitian(hamiltonian, theta, "optimize_split");
  auto cost_at = [&](double mu) { return split_cost(split_power(hamiltonian, theta, mu), w_h, w_m); };

  std::vector<SplitCost> grid;
  grid.reserve(split_grid_points);
  std::size_t best = 0;
  for (int k = 0; k < split_grid_points; ++k) {
    grid.push_back(cost_at(static_cast<double>(k) / (split_grid_points - 1)));
    if (grid.back().total < grid[best].total) best = grid.size() - 1;
  }

  const double step = 1.0 / (split_grid_points - 1);
  const double lo = best == 0 ? 0.0 : (static_cast<double>(best) - 1) * step;
  const double hi = best + 1 == grid.size() ? 1.0 : (static_cast<double>(best) + 1) * step;
  const LineMinimum refined = golden_section_minimize(
      [&](double mu) { return cost_at(mu).total; }, lo, hi, split_refine_width);

  const double grid_mu = *grid[best].mu;
  const bool take_refined =
      refined.value < grid[best].total || (refined.value == grid[best].total && refined.x < grid_mu);
  const double mu_star = take_refined ? refined.x : grid_mu;
  SplitCost cost = take_refined ? cost_at(refined.x) : grid[best];
  return SplitOptimum{mu_star, std::move(cost), std::move(grid), lo, hi, refined};
}

}  // namespace qhf
