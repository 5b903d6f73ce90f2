#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qhf/matrix.hpp"
#include "qhf/state.hpp"

// Matrix files are JSON objects with fields `dim`, `rows` and an optional
// `role`. Every complex entry is a two-element array [re, im]; numbers are
// written with 17 significant digits so that files round-trip exactly.
namespace qhf::io {

enum class Role { Hamiltonian, Dyson, Metric, State };

inline const char* to_string(Role r) {
  switch (r) {
    case Role::Hamiltonian: return "hamiltonian";
    case Role::Dyson: return "dyson";
    case Role::Metric: return "metric";
    case Role::State: return "state";
  }
  return "";
}

inline std::optional<Role> parse_role(const std::string& s) {
  if (s == "hamiltonian") return Role::Hamiltonian;
  if (s == "dyson") return Role::Dyson;
  if (s == "metric") return Role::Metric;
  if (s == "state") return Role::State;
  return std::nullopt;
}

inline std::string format_double(double v) {
  if (v == 0.0 && std::signbit(v)) return "-0.0";
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void append_entry(std::string& out, const Complex& z) {
  out += '[';
  out += format_double(z.real());
  out += ", ";
  out += format_double(z.imag());
  out += ']';
}

}  // namespace detail

inline std::string serialize(const DenseMatrix& m, std::optional<Role> role) {
  std::string out = "{\n  \"dim\": " + std::to_string(m.dim()) + ",\n";
  if (role) out += "  \"role\": \"" + std::string(to_string(*role)) + "\",\n";
  out += "  \"rows\": [\n";
  for (Index i = 0; i < m.dim(); ++i) {
    out += "    [";
    for (Index j = 0; j < m.dim(); ++j) {
      if (j) out += ", ";
      detail::append_entry(out, m(i, j));
    }
    out += i + 1 < m.dim() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

inline std::string serialize(const StateVector& v) {
  std::string out = "{\n  \"dim\": " + std::to_string(v.dim()) + ",\n  \"role\": \"state\",\n";
  out += "  \"rows\": [";
  for (Index i = 0; i < v.dim(); ++i) {
    if (i) out += ", ";
    detail::append_entry(out, v[i]);
  }
  out += "]\n}\n";
  return out;
}

/// Parsed but not yet typed file content. `flat` marks a state vector.
struct MatrixFile {
  Index dim;
  std::optional<Role> role;
  std::vector<Complex> entries;
  bool flat;
};

namespace detail {

inline Complex parse_entry(const nlohmann::json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    throw Error(ErrorKind::Parse, "entries must be [re, im] number pairs");
  }
  const Complex z(e[0].get<double>(), e[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorKind::Parse, "non-finite entry");
  }
  return z;
}

}  // namespace detail

inline MatrixFile parse_file(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::Parse, "top level must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
    throw Error(ErrorKind::Parse, "`dim` must be a positive integer");
  }
  MatrixFile f{static_cast<Index>(doc["dim"].get<long long>()), std::nullopt, {}, false};
  if (doc.contains("role")) {
    if (!doc["role"].is_string()) throw Error(ErrorKind::Parse, "`role` must be a string");
    f.role = parse_role(doc["role"].get<std::string>());
    if (!f.role) throw Error(ErrorKind::Parse, "unknown role " + doc["role"].dump());
  }
  if (!doc.contains("rows") || !doc["rows"].is_array()) {
    throw Error(ErrorKind::Parse, "`rows` must be an array");
  }
  const auto& rows = doc["rows"];
  if (static_cast<Index>(rows.size()) != f.dim) {
    throw Error(ErrorKind::Parse, "`rows` length does not match `dim`");
  }
  // A state is a flat list of [re, im] pairs; a matrix is a list of rows.
  f.flat = f.role == Role::State ||
           (!f.role && !rows.empty() && rows[0].is_array() && rows[0].size() == 2 &&
            rows[0][0].is_number());
  for (const auto& row : rows) {
    if (f.flat) {
      f.entries.push_back(detail::parse_entry(row));
      continue;
    }
    if (!row.is_array() || static_cast<Index>(row.size()) != f.dim) {
      throw Error(ErrorKind::Parse, "each row must hold `dim` entries");
    }
    for (const auto& e : row) f.entries.push_back(detail::parse_entry(e));
  }
  return f;
}

inline DenseMatrix to_matrix(const MatrixFile& f) {
  if (f.flat) throw Error(ErrorKind::Parse, "expected a matrix, found a state vector");
  DenseMatrix::Storage m(f.dim, f.dim);
  for (Index i = 0; i < f.dim; ++i) {
    for (Index j = 0; j < f.dim; ++j) m(i, j) = f.entries[static_cast<std::size_t>(i * f.dim + j)];
  }
  return DenseMatrix(std::move(m));
}

inline StateVector to_state(const MatrixFile& f) {
  if (!f.flat) throw Error(ErrorKind::Parse, "expected a state vector, found a matrix");
  StateVector::Storage v(f.dim);
  for (Index i = 0; i < f.dim; ++i) v(i) = f.entries[static_cast<std::size_t>(i)];
  return StateVector(std::move(v));
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

inline DenseMatrix read_matrix(const std::string& path) {
  try {
    return to_matrix(parse_file(read_text(path)));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument) throw Error(ErrorKind::Parse, path + ": " + e.what());
    throw;
  }
}

inline StateVector read_state(const std::string& path) {
  return to_state(parse_file(read_text(path)));
}

/// One line of a verification report: passes iff value <= tolerance.
struct ReportRecord {
  std::string name;
  double value;
  double tolerance;

  bool pass() const { return value <= tolerance; }
};

/// Record for a reported quantity that carries no threshold.
inline ReportRecord info(std::string name, double value) {
  return ReportRecord{std::move(name), value, std::numeric_limits<double>::infinity()};
}

inline std::string format_record(const ReportRecord& r) {
  return r.name + '\t' + format_double(r.value) + '\t' + format_double(r.tolerance) + '\t' +
         (r.pass() ? "pass" : "fail");
}

inline std::string format_report(const std::vector<ReportRecord>& records) {
  std::string out;
  for (const auto& r : records) out += format_record(r) + '\n';
  return out;
}

inline bool all_pass(const std::vector<ReportRecord>& records) {
  for (const auto& r : records) {
    if (!r.pass()) return false;
  }
  return true;
}

}  // namespace qhf::io
