#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "qhf/matrix.hpp"
#include "qhf/state.hpp"

namespace qhf {

/// Invertible, generally non-unitary map Omega with its inverse cached.
class DysonMap {
 public:
  explicit DysonMap(DenseMatrix omega) : omega_(std::move(omega)), inverse_(qhf::inverse(omega_)) {
    const auto n = omega_.dim();
    const double defect =
        (omega_.eigen() * inverse_.eigen() - DenseMatrix::Storage::Identity(n, n)).norm() /
        std::sqrt(static_cast<double>(n));
    if (defect > tol::dyson_inverse) {
      throw Error(ErrorKind::IllConditionedMap,
                  "Omega * Omega^-1 deviates from identity by " + std::to_string(defect));
    }
  }

  static DysonMap identity(Index n) { return DysonMap(DenseMatrix::identity(n)); }

  const DenseMatrix& omega() const noexcept { return omega_; }
  const DenseMatrix& inverse() const noexcept { return inverse_; }
  Index dim() const noexcept { return omega_.dim(); }

 private:
  DenseMatrix omega_;
  DenseMatrix inverse_;
};

/// Hermitian positive-definite metric Theta together with the evidence of
/// its positivity: a Cholesky factor and the smallest eigenvalue.
class MetricCertificate {
 public:
  /// Throws NotHermitian or NotPositiveDefinite.
  static MetricCertificate certify(const DenseMatrix& theta) {
    require_hermitian(theta, "metric");
    DenseMatrix h = hermitian_part(theta);
    DenseMatrix l = cholesky(h);
    const double min_ev = hermitian_eigenvalues(h).front();
    if (!(min_ev > 0.0)) {
      throw NotPositiveDefinite(0, "metric minimum eigenvalue " + std::to_string(min_ev));
    }
    return MetricCertificate(std::move(h), std::move(l), min_ev);
  }

  static MetricCertificate identity(Index n) { return certify(DenseMatrix::identity(n)); }

  const DenseMatrix& theta() const noexcept { return theta_; }
  const DenseMatrix& cholesky_factor() const noexcept { return factor_; }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }
  Index dim() const noexcept { return theta_.dim(); }

 private:
  MetricCertificate(DenseMatrix theta, DenseMatrix factor, double min_ev)
      : theta_(std::move(theta)), factor_(std::move(factor)), min_eigenvalue_(min_ev) {}

  DenseMatrix theta_;
  DenseMatrix factor_;
  double min_eigenvalue_;
};

/// Outcome of a Hermitizing similarity transform; the defect is reported,
/// never thrown.
struct Hermitized {
  DenseMatrix matrix;
  double hermiticity_defect;
};

/// Theta = Omega^dag Omega.
inline MetricCertificate metric_from_dyson(const DysonMap& map) {
  const DenseMatrix theta = hermitian_part(adjoint(map.omega()) * map.omega());
  try {
    return MetricCertificate::certify(theta);
  } catch (const NotPositiveDefinite& e) {
    throw Error(ErrorKind::IllConditionedMap, e.what());
  }
}

/// H = Omega^{-1} h Omega for Hermitian h.
inline DenseMatrix de_hermitize(const DenseMatrix& h, const DysonMap& map) {
  require_same_dim(h, map.omega(), "de_hermitize");
  require_hermitian(h, "de_hermitize");
  return map.inverse() * h * map.omega();
}

/// OT route: Omega H Omega^{-1}.
inline Hermitized hermitize_ot(const DenseMatrix& hamiltonian, const DysonMap& map) {
  require_same_dim(hamiltonian, map.omega(), "hermitize_ot");
  DenseMatrix out = map.omega() * hamiltonian * map.inverse();
  const double defect = hermiticity_defect(out);
  return Hermitized{std::move(out), defect};
}

/// ||H^dag Theta - Theta H||_F / (||H||_F ||Theta||_F) for any square Theta.
inline double quasi_hermiticity_residual(const DenseMatrix& hamiltonian, const DenseMatrix& theta) {
  require_same_dim(hamiltonian, theta, "quasi_hermiticity_residual");
  const auto& h = hamiltonian.eigen();
  const auto& m = theta.eigen();
  const double scale = h.norm() * m.norm();
  if (scale == 0.0) return 0.0;
  return (h.adjoint() * m - m * h).norm() / scale;
}

inline double quasi_hermiticity_residual(const DenseMatrix& hamiltonian,
                                         const MetricCertificate& theta) {
  return quasi_hermiticity_residual(hamiltonian, theta.theta());
}

inline void require_quasi_hermitian(const DenseMatrix& hamiltonian, const MetricCertificate& theta,
                                    const char* where) {
  const double r = quasi_hermiticity_residual(hamiltonian, theta);
  if (!(r < tol::quasi_hermiticity_pre)) {
    throw Error(ErrorKind::NotQuasiHermitian,
                std::string(where) + ": residual " + std::to_string(r));
  }
}

/// Y = Theta H (= H^dag Theta), Hermitian for a quasi-Hermitian pair.
inline DenseMatrix y_product(const DenseMatrix& hamiltonian, const MetricCertificate& theta) {
  require_quasi_hermitian(hamiltonian, theta, "y_product");
  return theta.theta() * hamiltonian;
}

inline void require_same_dim(const StateVector& a, const StateVector& b, Index n, const char* where) {
  if (a.dim() != n || b.dim() != n) {
    throw Error(ErrorKind::DimensionMismatch, std::string(where) + ": states " +
                                                  std::to_string(a.dim()) + ", " +
                                                  std::to_string(b.dim()) + " vs metric " +
                                                  std::to_string(n));
  }
}

/// <a|Theta|b>
inline Complex physical_inner_product(const StateVector& a, const StateVector& b,
                                      const MetricCertificate& theta) {
  require_same_dim(a, b, theta.dim(), "physical_inner_product");
  return a.eigen().dot(theta.theta().eigen() * b.eigen());
}

/// Components of the row vector <psi|Theta, so that <psi|Theta|x> is the
/// plain (non-conjugating) sum of bra_map(psi)_j * x_j.
inline StateVector bra_map(const StateVector& psi, const MetricCertificate& theta) {
  require_same_dim(psi, psi, theta.dim(), "bra_map");
  return StateVector(theta.theta().eigen().transpose() * psi.eigen().conjugate());
}

/// Largest |E_A - E_B| over eigenvalues matched in sorted order.
inline double isospectrality_check(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_dim(a, b, "isospectrality_check");
  const auto ea = eigendecompose(a).values;
  const auto eb = eigendecompose(b).values;
  double worst = 0.0;
  for (std::size_t k = 0; k < ea.size(); ++k) worst = std::max(worst, std::abs(ea[k] - eb[k]));
  return worst;
}

}  // namespace qhf
