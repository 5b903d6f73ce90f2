#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qhf/error.hpp"
#include "qhf/tolerances.hpp"

namespace qhf {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Square, finite, complex matrix. Every operator in the toolkit (h, H, H_H,
/// Omega, Theta, Theta_M, Y) is carried by this type; construction rejects
/// non-square, empty or non-finite input.
class DenseMatrix {
 public:
  using Storage = Eigen::MatrixXcd;

  explicit DenseMatrix(Storage m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
      throw Error(ErrorKind::InvalidArgument, "matrix must be square with dim >= 1, got " +
                                                  std::to_string(m_.rows()) + "x" +
                                                  std::to_string(m_.cols()));
    }
    if (!m_.allFinite()) throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
  }

  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const auto n = static_cast<Index>(rows.size());
    Storage m(n, n);
    Index i = 0;
    for (const auto& row : rows) {
      if (static_cast<Index>(row.size()) != n) {
        throw Error(ErrorKind::InvalidArgument, "ragged row in matrix literal");
      }
      Index j = 0;
      for (const auto& v : row) m(i, j++) = v;
      ++i;
    }
    return DenseMatrix(std::move(m));
  }

  static DenseMatrix from_real(const Eigen::MatrixXd& m) { return DenseMatrix(m.cast<Complex>()); }

  static DenseMatrix identity(Index n) { return DenseMatrix(Storage::Identity(n, n)); }
  static DenseMatrix zero(Index n) { return DenseMatrix(Storage::Zero(n, n)); }

  static DenseMatrix diagonal(std::span<const Complex> d) {
    Storage m = Storage::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(Index(i), Index(i)) = d[i];
    return DenseMatrix(std::move(m));
  }
  static DenseMatrix diagonal(std::initializer_list<Complex> d) {
    return diagonal(std::span<const Complex>(d.begin(), d.size()));
  }

  Index dim() const noexcept { return m_.rows(); }
  Complex operator()(Index i, Index j) const { return m_(i, j); }
  const Storage& eigen() const noexcept { return m_; }

  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    check_same(a, b);
    return DenseMatrix(a.m_ + b.m_);
  }
  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    check_same(a, b);
    return DenseMatrix(a.m_ - b.m_);
  }
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    check_same(a, b);
    return DenseMatrix(a.m_ * b.m_);
  }
  friend DenseMatrix operator*(Complex c, const DenseMatrix& a) { return DenseMatrix(c * a.m_); }
  friend DenseMatrix operator-(const DenseMatrix& a) { return DenseMatrix(-a.m_); }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.dim() == b.dim() && a.m_ == b.m_;
  }

 private:
  static void check_same(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dim() != b.dim()) {
      throw Error(ErrorKind::DimensionMismatch,
                  std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
  }

  Storage m_;
};

inline void require_same_dim(const DenseMatrix& a, const DenseMatrix& b, const char* where) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(where) + ": " + std::to_string(a.dim()) +
                                                  " vs " + std::to_string(b.dim()));
  }
}

inline DenseMatrix adjoint(const DenseMatrix& a) { return DenseMatrix(a.eigen().adjoint()); }

inline double frobenius_norm(const DenseMatrix& a) { return a.eigen().norm(); }

inline Eigen::VectorXd singular_values(const DenseMatrix& a) {
  return Eigen::JacobiSVD<DenseMatrix::Storage>(a.eigen()).singularValues();
}

inline double spectral_norm(const DenseMatrix& a) { return singular_values(a)(0); }

/// 2-norm condition number; +inf for a singular matrix.
inline double condition_number(const DenseMatrix& a) {
  const Eigen::VectorXd sv = singular_values(a);
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

/// ||A - A^dag||_F / ||A||_F (zero for the zero matrix).
inline double hermiticity_defect(const DenseMatrix& a) {
  const double n = frobenius_norm(a);
  if (n == 0.0) return 0.0;
  return (a.eigen() - a.eigen().adjoint()).norm() / n;
}

/// ||A - B||_F / ||B||_F, or the absolute difference when B is zero.
inline double relative_difference(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_dim(a, b, "relative_difference");
  const double diff = (a.eigen() - b.eigen()).norm();
  const double scale = b.eigen().norm();
  return scale == 0.0 ? diff : diff / scale;
}

inline double max_abs_difference(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_dim(a, b, "max_abs_difference");
  return (a.eigen() - b.eigen()).cwiseAbs().maxCoeff();
}

/// (A + A^dag) / 2
inline DenseMatrix hermitian_part(const DenseMatrix& a) {
  return DenseMatrix(0.5 * (a.eigen() + a.eigen().adjoint()));
}

inline DenseMatrix inverse(const DenseMatrix& a) {
  // |det A| / ||A||_2^n equals the product of sigma_i / sigma_max.
  const Eigen::VectorXd sv = singular_values(a);
  double det_abs = 1.0;
  double scaled = 1.0;
  for (Index i = 0; i < sv.size(); ++i) {
    det_abs *= sv(i);
    scaled *= sv(0) > 0.0 ? sv(i) / sv(0) : 0.0;
  }
  if (!(scaled > tol::singularity_floor)) {
    throw SingularMatrix(det_abs, "|det| ~ " + std::to_string(det_abs) +
                                      " below singularity floor relative to ||A||^n");
  }
  return DenseMatrix(a.eigen().partialPivLu().inverse());
}

struct EigenSystem {
  std::vector<Complex> values;
  DenseMatrix right_vectors;
  double condition;
};

namespace detail {

inline bool spectral_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace detail

/// General eigendecomposition with eigenvalues sorted by (real, imag).
/// Throws NearDefective when the eigenvector matrix is too ill-conditioned
/// (default ceiling 1e8) or the residual check fails.
inline EigenSystem eigendecompose(const DenseMatrix& a,
                                  double condition_ceiling = tol::eigenvector_condition_ceiling) {
  Eigen::ComplexEigenSolver<DenseMatrix::Storage> solver(a.eigen(), true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NearDefective, "eigensolver did not converge");
  }
  const Index n = a.dim();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    return detail::spectral_less(solver.eigenvalues()(i), solver.eigenvalues()(j));
  });

  std::vector<Complex> values;
  values.reserve(order.size());
  DenseMatrix::Storage v(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    values.push_back(solver.eigenvalues()(src));
    v.col(k) = solver.eigenvectors().col(src);
  }
  if (!v.allFinite()) throw Error(ErrorKind::NearDefective, "non-finite eigenvectors");

  DenseMatrix vectors(std::move(v));
  const double cond = condition_number(vectors);
  if (!(cond <= condition_ceiling)) {
    throw Error(ErrorKind::NearDefective,
                "eigenvector condition " + std::to_string(cond) + " exceeds ceiling");
  }

  Eigen::VectorXcd e(n);
  for (Index k = 0; k < n; ++k) e(k) = values[static_cast<std::size_t>(k)];
  const double residual =
      (a.eigen() * vectors.eigen() - vectors.eigen() * e.asDiagonal()).norm();
  if (residual > tol::eigen_residual * frobenius_norm(a)) {
    throw Error(ErrorKind::NearDefective, "eigen residual " + std::to_string(residual));
  }
  return EigenSystem{std::move(values), std::move(vectors), cond};
}

inline void require_hermitian(const DenseMatrix& a, const char* where) {
  const double defect = (a.eigen() - a.eigen().adjoint()).norm();
  if (defect > tol::hermiticity * frobenius_norm(a)) {
    throw Error(ErrorKind::NotHermitian,
                std::string(where) + ": relative defect " + std::to_string(hermiticity_defect(a)));
  }
}

/// Eigendecomposition of a Hermitian matrix: real ascending eigenvalues,
/// orthonormal eigenvectors.
inline EigenSystem eigendecompose_hermitian(const DenseMatrix& a) {
  require_hermitian(a, "eigendecompose_hermitian");
  Eigen::SelfAdjointEigenSolver<DenseMatrix::Storage> solver(hermitian_part(a).eigen());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NearDefective, "Hermitian eigensolver did not converge");
  }
  std::vector<Complex> values;
  values.reserve(static_cast<std::size_t>(a.dim()));
  for (Index k = 0; k < a.dim(); ++k) values.emplace_back(solver.eigenvalues()(k), 0.0);
  return EigenSystem{std::move(values), DenseMatrix(solver.eigenvectors()), 1.0};
}

inline std::vector<double> hermitian_eigenvalues(const DenseMatrix& a) {
  std::vector<double> out;
  for (const auto& v : eigendecompose_hermitian(a).values) out.push_back(v.real());
  return out;
}

/// Lower-triangular L with L L^dag = A. Pivots must exceed 1e-12 ||A||_F.
inline DenseMatrix cholesky(const DenseMatrix& a) {
  require_hermitian(a, "cholesky");
  const Index n = a.dim();
  const double floor = tol::positivity_floor * frobenius_norm(a);
  DenseMatrix::Storage l = DenseMatrix::Storage::Zero(n, n);
  const auto& m = a.eigen();
  for (Index j = 0; j < n; ++j) {
    double d = m(j, j).real();
    for (Index k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > floor)) {
      throw NotPositiveDefinite(static_cast<std::size_t>(j),
                                "pivot " + std::to_string(j) + " = " + std::to_string(d));
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (Index i = j + 1; i < n; ++i) {
      Complex sum = m(i, j);
      for (Index k = 0; k < j; ++k) sum -= l(i, k) * std::conj(l(j, k));
      l(i, j) = sum / ljj;
    }
  }
  return DenseMatrix(std::move(l));
}

/// Real power of a Hermitian positive-definite matrix, V diag(theta^p) V^dag.
inline DenseMatrix matrix_power(const DenseMatrix& a, double p) {
  const EigenSystem es = eigendecompose_hermitian(a);
  const double floor = tol::positivity_floor * frobenius_norm(a);
  if (!(es.values.front().real() > floor)) {
    throw NotPositiveDefinite(0, "smallest eigenvalue " + std::to_string(es.values.front().real()));
  }
  if (p == 0.0) return DenseMatrix::identity(a.dim());
  if (p == 1.0) return a;
  Eigen::VectorXcd d(a.dim());
  for (Index k = 0; k < a.dim(); ++k) {
    d(k) = std::pow(es.values[static_cast<std::size_t>(k)].real(), p);
  }
  const auto& v = es.right_vectors.eigen();
  const DenseMatrix::Storage r = v * d.asDiagonal() * v.adjoint();
  return DenseMatrix(0.5 * (r + r.adjoint()));
}

/// V diag(exp(E)) V^{-1}. The result is accepted only if it commutes with A
/// to 1e-10 relative.
inline DenseMatrix matrix_exp(const DenseMatrix& a) {
  const EigenSystem es = eigendecompose(a);
  Eigen::VectorXcd d(a.dim());
  for (Index k = 0; k < a.dim(); ++k) d(k) = std::exp(es.values[static_cast<std::size_t>(k)]);
  const auto& v = es.right_vectors.eigen();
  DenseMatrix x(v * d.asDiagonal() * v.partialPivLu().inverse());
  const double commutator = (a.eigen() * x.eigen() - x.eigen() * a.eigen()).norm();
  if (commutator > tol::exp_commutator * frobenius_norm(a) * frobenius_norm(x)) {
    throw Error(ErrorKind::NearDefective,
                "matrix_exp commutator residual " + std::to_string(commutator));
  }
  return x;
}

}  // namespace qhf
