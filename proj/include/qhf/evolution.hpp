#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qhf/hermitization.hpp"

namespace qhf {

/// exp(-i t H) via matrix_exp. Units with hbar = 1.
inline DenseMatrix propagator(const DenseMatrix& hamiltonian, double t) {
  return matrix_exp(Complex(0.0, -t) * hamiltonian);
}

/// exp(-i t H) = V diag(exp(-i t E)) V^{-1} with the eigensystem computed
/// once, so every time sample is propagated directly from t = 0.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const DenseMatrix& hamiltonian)
      : system_(eigendecompose(hamiltonian)),
        inverse_vectors_(system_.right_vectors.eigen().partialPivLu().inverse()) {}

  DenseMatrix at(double t) const {
    const Index n = system_.right_vectors.dim();
    Eigen::VectorXcd d(n);
    for (Index k = 0; k < n; ++k) {
      d(k) = std::exp(Complex(0.0, -t) * system_.values[static_cast<std::size_t>(k)]);
    }
    return DenseMatrix(system_.right_vectors.eigen() * d.asDiagonal() * inverse_vectors_);
  }

  StateVector apply(const StateVector& psi0, double t) const { return at(t) * psi0; }

 private:
  EigenSystem system_;
  DenseMatrix::Storage inverse_vectors_;
};

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<StateVector> states;
  /// ||psi(t)||^2 in the auxiliary space.
  std::vector<double> aux_norms;
  /// <psi(t)|Theta|psi(t)>, the physical norm.
  std::vector<double> theta_norms;
};

/// Samples psi(t) = exp(-i t H) psi0 at t = 0, dt, 2 dt, ... <= t_max.
inline EvolutionTrace evolve(const DenseMatrix& hamiltonian, const MetricCertificate& theta,
                             const StateVector& psi0, double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorKind::InvalidArgument, "dt must be positive");
  }
  if (!(t_max >= dt) || !std::isfinite(t_max)) {
    throw Error(ErrorKind::InvalidArgument, "t_max must be at least dt");
  }
  require_same_dim(hamiltonian, theta.theta(), "evolve");
  if (psi0.dim() != hamiltonian.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "evolve: state dim " + std::to_string(psi0.dim()));
  }

  const SpectralPropagator prop(hamiltonian);
  // Guard against t_max / dt landing just below an integer.
  const auto steps = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
  EvolutionTrace trace;
  trace.times.reserve(steps + 1);
  trace.states.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    StateVector psi = prop.apply(psi0, t);
    trace.times.push_back(t);
    trace.aux_norms.push_back(psi.squared_norm());
    trace.theta_norms.push_back(physical_inner_product(psi, psi, theta).real());
    trace.states.push_back(std::move(psi));
  }
  return trace;
}

/// |<psi(t)|Theta|psi(t)> - ||phi(t)||^2| where psi evolves under H in the
/// auxiliary space and phi(0) = Omega psi0 evolves under the Hermitian
/// h = Omega H Omega^{-1} in the textbook space.
inline double expectation_equivalence(const DenseMatrix& hamiltonian, const DysonMap& map,
                                      const StateVector& psi0, double t) {
  const Hermitized h = hermitize_ot(hamiltonian, map);
  if (!(h.hermiticity_defect < 1e-8)) {
    throw Error(ErrorKind::NotQuasiHermitian,
                "Omega H Omega^-1 has Hermiticity defect " + std::to_string(h.hermiticity_defect));
  }
  const MetricCertificate theta = metric_from_dyson(map);
  const StateVector psi = SpectralPropagator(hamiltonian).apply(psi0, t);
  const double physical = physical_inner_product(psi, psi, theta).real();

  // Unitary evolution from the Hermitian eigenbasis of h.
  const EigenSystem es = eigendecompose_hermitian(hermitian_part(h.matrix));
  const auto& v = es.right_vectors.eigen();
  Eigen::VectorXcd phases(v.cols());
  for (Index k = 0; k < v.cols(); ++k) {
    phases(k) = std::exp(Complex(0.0, -t * es.values[static_cast<std::size_t>(k)].real()));
  }
  const Eigen::VectorXcd phi =
      v * phases.asDiagonal() * v.adjoint() * (map.omega().eigen() * psi0.eigen());
  return std::abs(physical - phi.squaredNorm());
}

}  // namespace qhf
