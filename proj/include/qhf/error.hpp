#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qhf {

enum class ErrorKind {
  SingularMatrix,
  NearDefective,
  NotHermitian,
  NotPositiveDefinite,
  DimensionMismatch,
  IllConditionedMap,
  NotQuasiHermitian,
  ComplexSpectrum,
  CapExceeded,
  TargetOutsideFamily,
  PivotFailure,
  MuOutOfRange,
  InvalidArgument,
  Parse,
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NearDefective: return "NearDefective";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IllConditionedMap: return "IllConditionedMap";
    case ErrorKind::NotQuasiHermitian: return "NotQuasiHermitian";
    case ErrorKind::ComplexSpectrum: return "ComplexSpectrum";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::TargetOutsideFamily: return "TargetOutsideFamily";
    case ErrorKind::PivotFailure: return "PivotFailure";
    case ErrorKind::MuOutOfRange: return "MuOutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Base of every error raised by the library. The kind is stable and is what
/// callers (and the CLI exit-code mapping) should switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SingularMatrix : public Error {
 public:
  SingularMatrix(double det_estimate, const std::string& what)
      : Error(ErrorKind::SingularMatrix, what), det_estimate_(det_estimate) {}
  double det_estimate() const noexcept { return det_estimate_; }

 private:
  double det_estimate_;
};

class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(std::size_t pivot, const std::string& what)
      : Error(ErrorKind::NotPositiveDefinite, what), pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// Leading principal minor `minor()` (0-based) vanished during LDU without pivoting.
class PivotFailure : public Error {
 public:
  PivotFailure(std::size_t minor, const std::string& what)
      : Error(ErrorKind::PivotFailure, what), minor_(minor) {}
  std::size_t minor() const noexcept { return minor_; }

 private:
  std::size_t minor_;
};

class ComplexSpectrum : public Error {
 public:
  ComplexSpectrum(std::vector<std::complex<double>> offending, const std::string& what)
      : Error(ErrorKind::ComplexSpectrum, what), offending_(std::move(offending)) {}
  const std::vector<std::complex<double>>& eigenvalues() const noexcept { return offending_; }

 private:
  std::vector<std::complex<double>> offending_;
};

}  // namespace qhf
