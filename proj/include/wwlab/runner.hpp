#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wwlab/config.hpp"
#include "wwlab/normal_form.hpp"

namespace wwlab {

struct DiagnosticRecord {
  double t = 0.0;
  double amplitude = 0.0;
  double hamiltonian = 0.0;
  double sobolev_0 = 0.0, sobolev_s = 0.0;  // of u = (eta, |D|^{1/2} psi)
  double zygmund_s = 0.0;                    // of eta
  IdentityResiduals residuals;
  double energy_naive = 0.0, energy_phi = 0.0;  // ||U||^2 and ||Phi||^2 in H^beta
};

// Header line starting with '#', then the column names.
std::string csv_header();
std::string csv_row(const DiagnosticRecord& r);

DiagnosticRecord diagnose(const DNOperator& dn, const SurfaceState& s, double amplitude, const RunConfig& c,
                          const NormalFormKit& kit);

std::unique_ptr<DNOperator> make_dn(const RunConfig& c);

struct ConvergenceResult {
  std::string target;
  std::vector<double> parameters, errors;  // amplitudes, or time steps for hamiltonian_dt
  double slope = 0.0, expected = 0.0, tolerance = 0.0;
  bool pass = false;
};
ConvergenceResult convergence_study(const RunConfig& c);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Writes run.json, series.csv and summary.json under c.output_dir. Throws NumericalError on numerical failure.
void run(const RunConfig& c);

}  // namespace wwlab
