#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qhf/qhf.hpp"

namespace qhf::fixtures {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(0x5eed'cafeULL);
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline DenseMatrix random_complex(Index n, double scale = 1.0) {
  DenseMatrix::Storage m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(uniform(-scale, scale), uniform(-scale, scale));
  }
  return DenseMatrix(std::move(m));
}

inline DenseMatrix random_real(Index n, double scale = 1.0) {
  DenseMatrix::Storage m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) m(i, j) = uniform(-scale, scale);
  }
  return DenseMatrix(std::move(m));
}

inline DenseMatrix random_hermitian(Index n) { return hermitian_part(random_complex(n)); }

/// A A^dag + shift I, positive definite.
inline DenseMatrix random_hpd(Index n, double shift = 0.5) {
  const DenseMatrix a = random_complex(n);
  return hermitian_part(a * adjoint(a) + Complex(shift) * DenseMatrix::identity(n));
}

/// Invertible with condition number below `max_condition`.
inline DenseMatrix random_invertible(Index n, double max_condition = 1e3) {
  for (;;) {
    DenseMatrix a = random_complex(n) + Complex(1.5) * DenseMatrix::identity(n);
    if (condition_number(a) < max_condition) return a;
  }
}

/// V diag(E) V^{-1} with distinct real eigenvalues and a well-conditioned V.
inline DenseMatrix random_real_spectrum(Index n, std::vector<double>* eigenvalues = nullptr) {
  const DenseMatrix v = random_invertible(n, 50.0);
  std::vector<double> e;
  for (Index k = 0; k < n; ++k) e.push_back(static_cast<double>(k) + uniform(0.1, 0.9));
  std::vector<Complex> ce(e.begin(), e.end());
  if (eigenvalues) *eigenvalues = e;
  return v * DenseMatrix::diagonal(ce) * inverse(v);
}

/// Rank of a real matrix by Gaussian elimination with full pivoting.
inline int gaussian_rank(std::vector<std::vector<double>> a, double relative_cut) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  double scale = 0.0;
  for (const auto& r : a) {
    for (double x : r) scale = std::max(scale, std::abs(x));
  }
  const double cut = relative_cut * scale;
  int rank = 0;
  std::vector<bool> used_row(rows, false), used_col(cols, false);
  for (;;) {
    double best = cut;
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = 0; i < rows; ++i) {
      if (used_row[i]) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!used_col[j] && std::abs(a[i][j]) > best) {
          best = std::abs(a[i][j]);
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) return rank;
    used_row[pr] = used_col[pc] = true;
    ++rank;
    for (std::size_t i = 0; i < rows; ++i) {
      if (used_row[i]) continue;
      const double f = a[i][pc] / a[pr][pc];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[pr][j];
    }
  }
}

/// Dimension of Hermitian solutions of H^dag X = X H, assembled entrywise
/// from (H^dag X - X H)_ij = sum_k conj(H_ki) X_kj - X_ik H_kj over the real
/// and imaginary parts of every entry of X plus explicit Hermiticity rows.
inline int brute_force_solution_dimension(const DenseMatrix& h) {
  const Index n = h.dim();
  const std::size_t unknowns = static_cast<std::size_t>(2 * n * n);  // Re X_ij, Im X_ij
  auto re = [&](Index i, Index j) { return static_cast<std::size_t>(2 * (i * n + j)); };
  auto im = [&](Index i, Index j) { return static_cast<std::size_t>(2 * (i * n + j) + 1); };
  std::vector<std::vector<double>> rows;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      std::vector<double> real_row(unknowns, 0.0), imag_row(unknowns, 0.0);
      for (Index k = 0; k < n; ++k) {
        // conj(H_ki) X_kj
        const Complex a = std::conj(h(k, i));
        real_row[re(k, j)] += a.real();
        real_row[im(k, j)] -= a.imag();
        imag_row[re(k, j)] += a.imag();
        imag_row[im(k, j)] += a.real();
        // - X_ik H_kj
        const Complex b = h(k, j);
        real_row[re(i, k)] -= b.real();
        real_row[im(i, k)] += b.imag();
        imag_row[re(i, k)] -= b.imag();
        imag_row[im(i, k)] -= b.real();
      }
      rows.push_back(real_row);
      rows.push_back(imag_row);
      // X_ij = conj(X_ji)
      std::vector<double> herm_re(unknowns, 0.0), herm_im(unknowns, 0.0);
      herm_re[re(i, j)] += 1.0;
      herm_re[re(j, i)] -= 1.0;
      herm_im[im(i, j)] += 1.0;
      herm_im[im(j, i)] += 1.0;
      rows.push_back(herm_re);
      rows.push_back(herm_im);
    }
  }
  return static_cast<int>(unknowns) - gaussian_rank(rows, 1e-10);
}

}  // namespace qhf::fixtures
