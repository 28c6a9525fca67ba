#pragma once

#include <string>
#include <vector>

#include "wwlab/dirichlet_neumann.hpp"
#include "wwlab/evolution.hpp"

namespace wwlab {

enum class InitialData { gaussian_bump, cosine_packet, user_table };
enum class RunMode { simulate, identities, convergence, normal_form_drift };

struct RunConfig {
  int n_modes = 256;
  double box_length = 64.0;
  int n_z = 200;
  double z_max = 0.0;  // 0: DNParams default relative to the box
  double eps1 = 0.1;
  double eps2 = 0.4;
  double dt = 0.01;
  double t_final = 1.0;
  double amplitude = 0.01;
  double width = 1.0;      // Gaussian envelope width
  double wavenumber = 2.0;  // carrier of cosine_packet
  InitialData initial_data = InitialData::gaussian_bump;
  std::vector<double> table_eta, table_psi;  // user_table samples on the grid
  double s_index = 4.0;
  double beta = 4.0;
  RunMode mode = RunMode::simulate;
  std::string output_dir = "out";
  bool filter_enabled = false;
  double fd_delta = 0.05;
  std::string dn = "series";  // series or fixed_point
  int series_order = 6;
  int sample_every = 10;
  std::string target = "dn_taylor2";  // convergence target
};

// Field-level violations; empty iff the config may run.
std::vector<std::string> validate(const RunConfig& c);

// Parses a JSON document; type errors and unknown keys are reported as violations.
RunConfig parse_config(const std::string& text, std::vector<std::string>& violations);
RunConfig load_config(const std::string& path, std::vector<std::string>& violations);

// Resolved config with every default written out.
std::string to_json(const RunConfig& c);

Grid make_grid(const RunConfig& c);
CutoffTheta make_theta(const RunConfig& c);
DNParams make_dn_params(const RunConfig& c);

// Unit-amplitude shape for the configured initial data; scale by the amplitude.
SurfaceState initial_shape(const RunConfig& c);

// eta = A e^{-x^2/(2w^2)}, psi = A (x/w) e^{-x^2/(2w^2)}.
SurfaceState gaussian_bump(const Grid& g, double amplitude, double width);
// Zero-mean envelope data: eta = A (1 - x^2/w^2) e^{-x^2/(2w^2)}, psi = A (x/w) e^{-x^2/(2w^2)}.
// Unlike gaussian_bump it decays on the box after the gauge fix.
SurfaceState hermite_bump(const Grid& g, double amplitude, double width);
// eta = A cos(k x) e^{-x^2/(2w^2)}, psi = A k^{-1/2} sin(k x) e^{-x^2/(2w^2)}.
SurfaceState cosine_packet(const Grid& g, double amplitude, double width, double k);

}  // namespace wwlab
