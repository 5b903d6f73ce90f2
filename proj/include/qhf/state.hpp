#pragma once

#include <initializer_list>
#include <string>

#include "qhf/matrix.hpp"

namespace qhf {

/// Ket |psi> in C^n.
class StateVector {
 public:
  using Storage = Eigen::VectorXcd;

  explicit StateVector(Storage v) : v_(std::move(v)) {
    if (v_.size() < 1) throw Error(ErrorKind::InvalidArgument, "state must have dim >= 1");
    if (!v_.allFinite()) throw Error(ErrorKind::InvalidArgument, "state has non-finite entries");
  }

  static StateVector from(std::initializer_list<Complex> amplitudes) {
    Storage v(static_cast<Index>(amplitudes.size()));
    Index i = 0;
    for (const auto& a : amplitudes) v(i++) = a;
    return StateVector(std::move(v));
  }

  Index dim() const noexcept { return v_.size(); }
  Complex operator[](Index i) const { return v_(i); }
  const Storage& eigen() const noexcept { return v_; }

  /// Euclidean ||psi||^2 in the auxiliary space.
  double squared_norm() const { return v_.squaredNorm(); }

  friend StateVector operator*(const DenseMatrix& a, const StateVector& x) {
    if (a.dim() != x.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "matrix " + std::to_string(a.dim()) +
                                                    " applied to state " + std::to_string(x.dim()));
    }
    return StateVector(a.eigen() * x.v_);
  }

 private:
  Storage v_;
};

}  // namespace qhf
