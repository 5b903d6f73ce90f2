#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qhf/evolution.hpp"
#include "qhf/example_model.hpp"
#include "qhf/hybrid_split.hpp"
#include "qhf/io.hpp"
#include "qhf/metric_solver.hpp"

// Command-line front end. Exit codes: 0 all checks pass, 1 mathematical
// failure, 2 usage / parse / I/O failure.
namespace qhf::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

struct Options {
  std::string hamiltonian;
  std::string metric;
  std::string dyson;
  std::string state;
  std::string strategy = "triangular";
  std::optional<double> mu;
  double w_h = 1.0;
  double w_m = 1.0;
  std::optional<double> t_max;
  std::optional<double> dt;
  double s = 1.0;
  double t = 1.0;
  std::string out;
  std::vector<double> weights;
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Io:
    case ErrorKind::InvalidArgument:
    case ErrorKind::DimensionMismatch:
      return exit_usage;
    default:
      return exit_failed;
  }
}

namespace detail {

inline std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

inline void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::Io, "cannot create directory " + dir);
  }
}

inline void require_path(const std::string& path, const char* flag) {
  if (path.empty()) throw Error(ErrorKind::InvalidArgument, std::string(flag) + " is required");
}

/// Pass iff lambda_min(Theta) >= 1e-12 ||Theta||_2.
inline io::ReportRecord positivity_record(const std::string& name, const DenseMatrix& theta) {
  const double lambda_min = hermitian_eigenvalues(hermitian_part(theta)).front();
  return io::ReportRecord{name, -lambda_min / spectral_norm(theta), -tol::positivity_floor};
}

inline int finish(const std::vector<io::ReportRecord>& records, std::ostream& out) {
  out << io::format_report(records);
  return io::all_pass(records) ? exit_ok : exit_failed;
}

}  // namespace detail

inline int cmd_verify(const Options& o, std::ostream& out) {
  detail::require_path(o.hamiltonian, "--hamiltonian");
  detail::require_path(o.metric, "--metric");
  const DenseMatrix h = io::read_matrix(o.hamiltonian);
  const DenseMatrix theta = io::read_matrix(o.metric);
  require_same_dim(h, theta, "verify");

  std::vector<io::ReportRecord> records;
  records.push_back({"metric_hermiticity", hermiticity_defect(theta), tol::hermiticity});
  records.push_back(detail::positivity_record("metric_min_eigenvalue_negated", theta));
  records.push_back({"quasi_hermiticity", quasi_hermiticity_residual(h, theta), tol::hermiticity});
  double imaginary = std::numeric_limits<double>::infinity();
  try {
    imaginary = 0.0;
    for (const auto& e : eigendecompose(h).values) imaginary = std::max(imaginary, std::abs(e.imag()));
    const double scale = frobenius_norm(h);
    if (scale > 0.0) imaginary /= scale;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NearDefective) throw;
    imaginary = std::numeric_limits<double>::infinity();
  }
  records.push_back({"spectral_reality", imaginary, tol::real_spectrum});
  return detail::finish(records, out);
}

inline int cmd_metric(const Options& o, std::ostream& out) {
  detail::require_path(o.hamiltonian, "--hamiltonian");
  const DenseMatrix h = io::read_matrix(o.hamiltonian);
  MetricFamily family = unit_weight_family(h);
  if (!o.weights.empty()) {
    family.weights = o.weights;
  } else if (!o.metric.empty()) {
    const DenseMatrix target = io::read_matrix(o.metric);
    require_same_dim(h, target, "metric");
    family.weights = fit_weights(family.basis, MetricCertificate::certify(target)).weights;
  }
  const MetricCertificate theta = metric_from_weights(family);
  io::write_text(o.out.empty() ? "metric.json" : o.out, io::serialize(theta.theta(), io::Role::Metric));

  std::vector<io::ReportRecord> records;
  for (std::size_t k = 0; k < family.weights.size(); ++k) {
    records.push_back(io::info("weight_" + std::to_string(k), family.weights[k]));
  }
  records.push_back({"quasi_hermiticity", quasi_hermiticity_residual(h, theta), tol::hermiticity});
  records.push_back(io::info("min_eigenvalue", theta.min_eigenvalue()));
  return detail::finish(records, out);
}

inline int cmd_split(const Options& o, std::ostream& out) {
  detail::require_path(o.hamiltonian, "--hamiltonian");
  const DenseMatrix h = io::read_matrix(o.hamiltonian);

  std::optional<HybridSplit> split;
  if (o.strategy == "triangular") {
    std::optional<DysonMap> map;
    if (!o.dyson.empty()) {
      map.emplace(io::read_matrix(o.dyson));
    } else if (!o.metric.empty()) {
      // Theta = L L^dag, so Omega = L^dag reproduces Theta = Omega^dag Omega.
      map.emplace(adjoint(cholesky(io::read_matrix(o.metric))));
    } else {
      throw Error(ErrorKind::InvalidArgument, "triangular split needs --dyson or --metric");
    }
    split.emplace(split_triangular(h, *map));
  } else if (o.strategy == "power") {
    detail::require_path(o.metric, "--metric");
    if (!o.mu) throw Error(ErrorKind::InvalidArgument, "power split needs --mu");
    split.emplace(split_power(h, MetricCertificate::certify(io::read_matrix(o.metric)), *o.mu));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown strategy " + o.strategy);
  }

  const std::string dir = o.out.empty() ? "." : o.out;
  detail::ensure_directory(dir);
  io::write_text(detail::join(dir, "omega_m.json"), io::serialize(split->omega_m.omega(), io::Role::Dyson));
  io::write_text(detail::join(dir, "omega_h.json"), io::serialize(split->omega_h.omega(), io::Role::Dyson));
  io::write_text(detail::join(dir, "h_h.json"), io::serialize(split->h_h, io::Role::Hamiltonian));
  io::write_text(detail::join(dir, "theta_m.json"), io::serialize(split->theta_m.theta(), io::Role::Metric));

  const SplitCost cost = split_cost(*split, o.w_h, o.w_m);
  std::vector<io::ReportRecord> records;
  if (split->mu) records.push_back(io::info("mu", *split->mu));
  records.push_back({"recomposition_residual", split->recomposition_residual, tol::recomposition});
  records.push_back({"reduced_qh_residual", split->reduced_qh_residual, tol::reduced_quasi_hermiticity});
  records.push_back({"hermitized_defect", hybrid_hermitize(*split).hermiticity_defect, 1e-9});
  records.push_back(io::info("non_hermiticity", cost.non_hermiticity));
  records.push_back(io::info("metric_condition", cost.metric_condition));
  records.push_back(io::info("total_cost", cost.total));
  return detail::finish(records, out);
}

inline std::string format_cost_grid(const SplitOptimum& opt) {
  std::string csv = "mu,non_hermiticity,metric_condition,total\n";
  for (const auto& c : opt.grid) {
    csv += io::format_double(*c.mu) + ',' + io::format_double(c.non_hermiticity) + ',' +
           io::format_double(c.metric_condition) + ',' + io::format_double(c.total) + '\n';
  }
  return csv;
}

inline int cmd_optimize_split(const Options& o, std::ostream& out) {
  detail::require_path(o.hamiltonian, "--hamiltonian");
  detail::require_path(o.metric, "--metric");
  const DenseMatrix h = io::read_matrix(o.hamiltonian);
  const MetricCertificate theta = MetricCertificate::certify(io::read_matrix(o.metric));
  const SplitOptimum opt = optimize_split(h, theta, o.w_h, o.w_m);

  const std::string dir = o.out.empty() ? "." : o.out;
  detail::ensure_directory(dir);
  io::write_text(detail::join(dir, "split_cost_grid.csv"), format_cost_grid(opt));

  const double endpoint_best = std::min(opt.grid.front().total, opt.grid.back().total);
  std::vector<io::ReportRecord> records{
      io::info("mu_star", opt.mu_star),
      io::info("cost_mu0", opt.grid.front().total),
      io::info("cost_mu1", opt.grid.back().total),
      io::info("cost_optimum", opt.cost.total),
      io::info("refine_bracket_lo", opt.bracket_lo),
      io::info("refine_bracket_hi", opt.bracket_hi),
      io::info("refined_mu", opt.refined.x),
      io::info("refined_cost", opt.refined.value),
      {"optimum_minus_best_endpoint", opt.cost.total - endpoint_best, 0.0},
  };
  return detail::finish(records, out);
}

inline std::string format_trace(const EvolutionTrace& trace) {
  const Index n = trace.states.front().dim();
  std::string csv = "time,aux_norm,theta_norm";
  for (Index i = 0; i < n; ++i) {
    csv += ",psi" + std::to_string(i) + "_re,psi" + std::to_string(i) + "_im";
  }
  csv += '\n';
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    csv += io::format_double(trace.times[k]) + ',' + io::format_double(trace.aux_norms[k]) + ',' +
           io::format_double(trace.theta_norms[k]);
    for (Index i = 0; i < n; ++i) {
      csv += ',' + io::format_double(trace.states[k][i].real()) + ',' +
             io::format_double(trace.states[k][i].imag());
    }
    csv += '\n';
  }
  return csv;
}

inline int cmd_evolve(const Options& o, std::ostream& out) {
  detail::require_path(o.hamiltonian, "--hamiltonian");
  detail::require_path(o.metric, "--metric");
  detail::require_path(o.state, "--state");
  if (!o.t_max || !o.dt) throw Error(ErrorKind::InvalidArgument, "--t-max and --dt are required");
  if (!(*o.dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "--dt must be positive");
  const DenseMatrix h = io::read_matrix(o.hamiltonian);
  const MetricCertificate theta = MetricCertificate::certify(io::read_matrix(o.metric));
  const StateVector psi0 = io::read_state(o.state);
  const std::string csv = format_trace(evolve(h, theta, psi0, *o.t_max, *o.dt));
  if (o.out.empty()) {
    out << csv;
  } else {
    io::write_text(o.out, csv);
  }
  return exit_ok;
}

inline int cmd_example(const Options& o, std::ostream& out) {
  const example::Params p{o.s, o.t};
  const std::string dir = o.out.empty() ? "." : o.out;
  detail::ensure_directory(dir);

  const example::Factors f = example::factors(p);
  const DenseMatrix h = example::hamiltonian(p);
  const DenseMatrix theta = example::metric_matrix(p);
  const HybridSplit hybrid = example::hybrid(p);
  const auto write = [&](const char* name, const DenseMatrix& m, std::optional<io::Role> role) {
    io::write_text(detail::join(dir, name), io::serialize(m, role));
  };
  write("h_textbook.json", example::textbook_hamiltonian(), io::Role::Hamiltonian);
  write("omega_m.json", f.omega_m.omega(), io::Role::Dyson);
  write("omega_h.json", f.omega_h.omega(), io::Role::Dyson);
  write("omega.json", f.omega.omega(), io::Role::Dyson);
  write("hamiltonian.json", h, io::Role::Hamiltonian);
  write("metric.json", theta, io::Role::Metric);
  write("y.json", example::y_matrix(p), std::nullopt);
  write("h_h.json", hybrid.h_h, io::Role::Hamiltonian);
  write("theta_m.json", hybrid.theta_m.theta(), io::Role::Metric);

  const example::MetricSpectrum sp = example::metric_spectrum(p);
  const auto numeric = hermitian_eigenvalues(hermitian_part(theta));
  const double factored = example::discriminant_factored(p);
  const double factored_scale = std::max(std::abs(factored), 1.0);
  const auto [reduced_minus, reduced_plus] = example::reduced_metric_eigenvalues(p.s);
  const auto reduced_numeric = hermitian_eigenvalues(hybrid.theta_m.theta());

  std::vector<io::ReportRecord> records{
      io::info("theta_plus", sp.theta_plus),
      io::info("theta_minus", sp.theta_minus),
      io::info("discriminant", sp.discriminant),
      {"theta_plus_vs_eigensolver", std::abs(sp.theta_plus - numeric.back()), 1e-9},
      {"theta_minus_vs_eigensolver", std::abs(sp.theta_minus - numeric.front()), 1e-9},
      {"discriminant_factorization", std::abs(sp.discriminant - factored) / factored_scale, 1e-10},
      detail::positivity_record("metric_min_eigenvalue_negated", theta),
      io::info("theta_m_minus", reduced_minus),
      io::info("theta_m_plus", reduced_plus),
      {"theta_m_eigen_check",
       std::max(std::abs(reduced_minus - reduced_numeric.front()),
                std::abs(reduced_plus - reduced_numeric.back())),
       1e-10},
      {"y_closed_form", relative_difference(example::y_matrix(p), theta * h), 1e-11},
      {"reduced_qh_residual", hybrid.reduced_qh_residual, tol::reduced_quasi_hermiticity},
  };
  const std::string report = io::format_report(records);
  io::write_text(detail::join(dir, "report.tsv"), report);
  out << report;
  return io::all_pass(records) ? exit_ok : exit_failed;
}

/// Parses argv (argv[0] is the program name) and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hermitization toolkit for quasi-Hermitian Hamiltonians", "qhf"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "Check a Hamiltonian/metric pair");
  verify->add_option("--hamiltonian", o.hamiltonian, "Hamiltonian matrix file")->required();
  verify->add_option("--metric", o.metric, "Metric matrix file")->required();

  auto* metric = app.add_subcommand("metric", "Build a metric from the left eigenbasis");
  metric->add_option("--hamiltonian", o.hamiltonian, "Hamiltonian matrix file")->required();
  metric->add_option("--weights", o.weights, "Comma-separated positive weights")->delimiter(',');
  metric->add_option("--metric", o.metric, "Target metric to fit weights against");
  metric->add_option("--out", o.out, "Output metric file (default metric.json)");

  auto* split = app.add_subcommand("split", "Factorize the Dyson map into Omega_M Omega_H");
  split->add_option("--hamiltonian", o.hamiltonian, "Hamiltonian matrix file")->required();
  split->add_option("--metric", o.metric, "Metric matrix file");
  split->add_option("--dyson", o.dyson, "Dyson map file (triangular strategy)");
  split->add_option("--strategy", o.strategy, "triangular | power")
      ->check(CLI::IsMember({"triangular", "power"}));
  split->add_option("--mu", o.mu, "Interpolation parameter in [0, 1] (power strategy)");
  split->add_option("--wh", o.w_h, "Non-Hermiticity cost weight");
  split->add_option("--wm", o.w_m, "Metric-condition cost weight");
  split->add_option("--out", o.out, "Output directory");

  auto* optimize = app.add_subcommand("optimize-split", "Optimize mu over the power family");
  optimize->add_option("--hamiltonian", o.hamiltonian, "Hamiltonian matrix file")->required();
  optimize->add_option("--metric", o.metric, "Metric matrix file")->required();
  optimize->add_option("--wh", o.w_h, "Non-Hermiticity cost weight");
  optimize->add_option("--wm", o.w_m, "Metric-condition cost weight");
  optimize->add_option("--out", o.out, "Directory for split_cost_grid.csv");

  auto* evolve_cmd = app.add_subcommand("evolve", "Emit a CSV evolution trace");
  evolve_cmd->add_option("--hamiltonian", o.hamiltonian, "Hamiltonian matrix file")->required();
  evolve_cmd->add_option("--metric", o.metric, "Metric matrix file")->required();
  evolve_cmd->add_option("--state", o.state, "Initial state file")->required();
  evolve_cmd->add_option("--t-max", o.t_max, "Final time")->required();
  evolve_cmd->add_option("--dt", o.dt, "Sampling step")->required();
  evolve_cmd->add_option("--out", o.out, "CSV output file (default stdout)");

  auto* example_cmd = app.add_subcommand("example", "Write the two-level example matrices");
  example_cmd->add_option("--s", o.s, "Parameter s");
  example_cmd->add_option("--t", o.t, "Parameter t");
  example_cmd->add_option("--out", o.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*verify) return cmd_verify(o, out);
    if (*metric) return cmd_metric(o, out);
    if (*split) return cmd_split(o, out);
    if (*optimize) return cmd_optimize_split(o, out);
    if (*evolve_cmd) return cmd_evolve(o, out);
    if (*example_cmd) return cmd_example(o, out);
  } catch (const Error& e) {
    err << "qhf: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "qhf: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"qhf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qhf::cli
