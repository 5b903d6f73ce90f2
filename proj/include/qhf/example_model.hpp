#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "qhf/hybrid_split.hpp"

// Closed forms of the two-level model with textbook Hamiltonian diag(1, 2)
// and Dyson map Omega(s, t) = Omega_M(s) Omega_H(t). They serve as golden
// values for the generic routines.
namespace qhf::example {

struct Params {
  double s;
  double t;
};

/// Eigenvalues theta_+ >= theta_- of the metric and the discriminant D.
struct MetricSpectrum {
  double theta_plus;
  double theta_minus;
  double discriminant;
};

struct Factors {
  DysonMap omega_m;
  DysonMap omega_h;
  DysonMap omega;
};

inline DenseMatrix textbook_hamiltonian() { return DenseMatrix::diagonal({1.0, 2.0}); }

inline DenseMatrix omega_m_matrix(const Params& p) {
  return DenseMatrix::from_rows({{1.0, 0.0}, {p.s, 1.0}});
}

inline DenseMatrix omega_h_matrix(const Params& p) {
  return DenseMatrix::from_rows({{1.0, p.t}, {0.0, 1.0}});
}

inline DenseMatrix omega_matrix(const Params& p) {
  const double s = p.s, t = p.t;
  return DenseMatrix::from_rows({{1.0, t}, {s, s * t + 1.0}});
}

inline Factors factors(const Params& p) {
  return Factors{DysonMap(omega_m_matrix(p)), DysonMap(omega_h_matrix(p)),
                 DysonMap(omega_matrix(p))};
}

/// H = Omega^{-1} diag(1,2) Omega.
inline DenseMatrix hamiltonian(const Params& p) {
  const double s = p.s, t = p.t;
  return DenseMatrix::from_rows({{1.0 - s * t, -(s * t + 1.0) * t}, {s, s * t + 2.0}});
}

/// Theta = Omega^dag Omega, entries written exactly as the closed form; the
/// two off-diagonal expressions agree algebraically but not bitwise.
inline DenseMatrix metric_matrix(const Params& p) {
  const double s = p.s, t = p.t;
  const double lower = t + (t * s + 1.0) * s;
  return DenseMatrix::from_rows({{1.0 + s * s, (1.0 + s * s) * t + s},
                                 {lower, lower * t + t * s + 1.0}});
}

inline MetricCertificate metric(const Params& p) { return MetricCertificate::certify(metric_matrix(p)); }

/// Y = H^dag Theta = Theta H.
inline DenseMatrix y_matrix(const Params& p) {
  const double s = p.s, t = p.t;
  const double off = t + 2.0 * t * s * s + 2.0 * s;
  return DenseMatrix::from_rows(
      {{1.0 + 2.0 * s * s, off}, {off, t * t + 2.0 * t * t * s * s + 4.0 * t * s + 2.0}});
}

inline double discriminant(const Params& p) {
  const double s = p.s, t = p.t;
  const double s2 = s * s, s3 = s2 * s, s4 = s2 * s2;
  const double t2 = t * t, t3 = t2 * t, t4 = t2 * t2;
  return 2.0 * t4 * s2 + 4.0 * t3 * s + 4.0 * t3 * s3 + t4 * s4 + s4 + t4 + 4.0 * s2 +
         8.0 * t * s + 4.0 * t2 + 10.0 * t2 * s2 + 2.0 * t2 * s4 + 4.0 * t * s3;
}

/// D = (4 + t^2 s^2 + (s+t)^2) (t^2 s^2 + (s+t)^2), manifestly nonnegative.
inline double discriminant_factored(const Params& p) {
  const double s = p.s, t = p.t;
  const double q = t * t * s * s + (s + t) * (s + t);
  return (4.0 + q) * q;
}

inline MetricSpectrum metric_spectrum(const Params& p) {
  const double s = p.s, t = p.t;
  const double d = discriminant(p);
  const double centre = 0.5 * t * t + 0.5 * t * t * s * s + t * s + 1.0 + 0.5 * s * s;
  const double half_root = 0.5 * std::sqrt(std::max(d, 0.0));
  return MetricSpectrum{centre + half_root, centre - half_root, d};
}

inline DenseMatrix reduced_hamiltonian(double s) {
  return DenseMatrix::from_rows({{1.0, 0.0}, {s, 2.0}});
}

inline DenseMatrix reduced_metric(double s) {
  return DenseMatrix::from_rows({{1.0 + s * s, s}, {s, 1.0}});
}

/// Eigenvalues (2 + s^2 +- sqrt((2 + s^2)^2 - 4)) / 2 of Theta_M, as (minus, plus).
inline std::pair<double, double> reduced_metric_eigenvalues(double s) {
  const double tr = 2.0 + s * s;
  const double root = std::sqrt(std::max(tr * tr - 4.0, 0.0));
  return {0.5 * (tr - root), 0.5 * (tr + root)};
}

/// The split with Omega_M = [[1,0],[s,1]], Omega_H = [[1,t],[0,1]] built from
/// the closed forms of H_H and Theta_M.
inline HybridSplit hybrid(const Params& p) {
  DysonMap omega_m(omega_m_matrix(p));
  DysonMap omega_h(omega_h_matrix(p));
  DenseMatrix h_h = reduced_hamiltonian(p.s);
  MetricCertificate theta_m = MetricCertificate::certify(reduced_metric(p.s));
  const double recomposition =
      relative_difference(omega_m.omega() * omega_h.omega(), omega_matrix(p));
  const double reduced = quasi_hermiticity_residual(h_h, theta_m);
  return HybridSplit{std::move(omega_m), std::move(omega_h), std::move(h_h), std::move(theta_m),
                     recomposition,      reduced,            std::nullopt};
}

}  // namespace qhf::example
