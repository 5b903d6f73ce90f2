#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qhf/hermitization.hpp"

namespace qhf {

/// Eigenvectors of H^dag for a real, non-degenerate spectrum. Columns have
/// unit norm and their first nonzero component is real positive, so all
/// of the metric ambiguity lives in the weights of a MetricFamily.
struct LeftEigenbasis {
  std::vector<double> values;
  DenseMatrix left_vectors;
};

/// Theta = sum_n kappa_n |L_n><L_n|.
struct MetricFamily {
  LeftEigenbasis basis;
  std::vector<double> weights;
};

struct WeightFit {
  std::vector<double> weights;
  double residual;
};

namespace detail {

inline void require_real_spectrum(const DenseMatrix& hamiltonian, const std::vector<Complex>& values) {
  const double bound = tol::real_spectrum * frobenius_norm(hamiltonian);
  std::vector<Complex> offending;
  for (const auto& e : values) {
    if (std::abs(e.imag()) >= bound && e.imag() != 0.0) offending.push_back(e);
  }
  if (!offending.empty()) {
    std::string list;
    for (const auto& e : offending) {
      list += (list.empty() ? "" : ", ") + std::string("(") + std::to_string(e.real()) + "," +
              std::to_string(e.imag()) + ")";
    }
    throw ComplexSpectrum(std::move(offending), "non-real eigenvalues " + list);
  }
}

}  // namespace detail

inline LeftEigenbasis left_eigenbasis(const DenseMatrix& hamiltonian) {
  const EigenSystem es = eigendecompose(adjoint(hamiltonian));
  detail::require_real_spectrum(hamiltonian, es.values);

  const double gap_floor = tol::real_spectrum * frobenius_norm(hamiltonian);
  std::vector<double> values;
  for (const auto& e : es.values) values.push_back(e.real());
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (!(values[k] - values[k - 1] > gap_floor)) {
      throw Error(ErrorKind::NearDefective,
                  "degenerate eigenvalue " + std::to_string(values[k]) + " in left eigenbasis");
    }
  }

  DenseMatrix::Storage v = es.right_vectors.eigen();
  for (Index c = 0; c < v.cols(); ++c) {
    v.col(c).normalize();
    for (Index r = 0; r < v.rows(); ++r) {
      const Complex z = v(r, c);
      if (std::abs(z) > 1e-12) {
        v.col(c) *= std::conj(z) / std::abs(z);
        v(r, c) = std::abs(z);
        break;
      }
    }
  }
  return LeftEigenbasis{std::move(values), DenseMatrix(std::move(v))};
}

inline MetricFamily unit_weight_family(const DenseMatrix& hamiltonian) {
  LeftEigenbasis basis = left_eigenbasis(hamiltonian);
  std::vector<double> weights(basis.values.size(), 1.0);
  return MetricFamily{std::move(basis), std::move(weights)};
}

namespace detail {

inline DenseMatrix::Storage weighted_projector_sum(const LeftEigenbasis& basis,
                                                   const std::vector<double>& weights) {
  const auto& l = basis.left_vectors.eigen();
  Eigen::VectorXcd k(l.cols());
  for (Index i = 0; i < l.cols(); ++i) k(i) = weights[static_cast<std::size_t>(i)];
  const DenseMatrix::Storage theta = l * k.asDiagonal() * l.adjoint();
  return 0.5 * (theta + theta.adjoint());
}

}  // namespace detail

inline MetricCertificate metric_from_weights(const MetricFamily& family) {
  const auto n = family.basis.left_vectors.dim();
  if (static_cast<Index>(family.weights.size()) != n) {
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(n) + " weights, got " +
                                                  std::to_string(family.weights.size()));
  }
  for (double w : family.weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::InvalidArgument, "metric weights must be finite and positive");
    }
  }
  return MetricCertificate::certify(
      DenseMatrix(detail::weighted_projector_sum(family.basis, family.weights)));
}

/// Real dimension of the space of Hermitian Theta with H^dag Theta = Theta H.
/// The linear constraint is vectorized over the n^2 real coordinates of a
/// Hermitian matrix; the nullity is read off an SVD with a 1e-10 relative cut.
inline int solution_space_dimension(const DenseMatrix& hamiltonian,
                                    int cap = tol::solution_space_cap) {
  const Index n = hamiltonian.dim();
  if (n > cap) {
    throw Error(ErrorKind::CapExceeded,
                "dimension " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  detail::require_real_spectrum(hamiltonian, eigendecompose(hamiltonian).values);

  const auto& h = hamiltonian.eigen();
  const Index params = n * n;
  Eigen::MatrixXd system(2 * params, params);
  Index p = 0;
  auto add_column = [&](const DenseMatrix::Storage& b) {
    const DenseMatrix::Storage c = h.adjoint() * b - b * h;
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        system(i * n + j, p) = c(i, j).real();
        system(params + i * n + j, p) = c(i, j).imag();
      }
    }
    ++p;
  };
  for (Index i = 0; i < n; ++i) {
    DenseMatrix::Storage b = DenseMatrix::Storage::Zero(n, n);
    b(i, i) = 1.0;
    add_column(b);
    for (Index j = i + 1; j < n; ++j) {
      DenseMatrix::Storage re = DenseMatrix::Storage::Zero(n, n);
      re(i, j) = re(j, i) = 1.0;
      add_column(re);
      DenseMatrix::Storage im = DenseMatrix::Storage::Zero(n, n);
      im(i, j) = Complex(0.0, 1.0);
      im(j, i) = Complex(0.0, -1.0);
      add_column(im);
    }
  }

  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(system).singularValues();
  // Floor the scale at ||H||_2 so that pure rounding noise (e.g. H = c I up
  // to roundoff) is not promoted to rank.
  const double cut = tol::rank_threshold * std::max(sv(0), spectral_norm(hamiltonian));
  int rank = 0;
  for (Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cut) ++rank;
  }
  return static_cast<int>(params) - rank;
}

/// Least-squares weights reproducing `target` inside the family spanned by
/// the projectors |L_n><L_n|. Throws TargetOutsideFamily when the residual
/// exceeds 1e-8 ||target||_F or an optimal weight is not positive.
inline WeightFit fit_weights(const LeftEigenbasis& basis, const MetricCertificate& target) {
  const auto& l = basis.left_vectors.eigen();
  const Index n = l.rows();
  if (target.dim() != n) {
    throw Error(ErrorKind::DimensionMismatch, "basis " + std::to_string(n) + " vs target " +
                                                  std::to_string(target.dim()));
  }
  const Index rows = 2 * n * n;
  Eigen::MatrixXd design(rows, n);
  Eigen::VectorXd rhs(rows);
  const auto& t = target.theta().eigen();
  for (Index k = 0; k < n; ++k) {
    const DenseMatrix::Storage proj = l.col(k) * l.col(k).adjoint();
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        design(i * n + j, k) = proj(i, j).real();
        design(n * n + i * n + j, k) = proj(i, j).imag();
      }
    }
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      rhs(i * n + j) = t(i, j).real();
      rhs(n * n + i * n + j) = t(i, j).imag();
    }
  }
  const Eigen::VectorXd kappa = design.colPivHouseholderQr().solve(rhs);

  WeightFit fit{std::vector<double>(kappa.data(), kappa.data() + kappa.size()), 0.0};
  fit.residual = (detail::weighted_projector_sum(basis, fit.weights) - t).norm();
  if (!(fit.residual <= tol::family_fit * t.norm())) {
    throw Error(ErrorKind::TargetOutsideFamily,
                "least-squares residual " + std::to_string(fit.residual));
  }
  for (double w : fit.weights) {
    if (!(w > 0.0)) {
      throw Error(ErrorKind::TargetOutsideFamily,
                  "optimal weight " + std::to_string(w) + " is not positive");
    }
  }
  return fit;
}

}  // namespace qhf
