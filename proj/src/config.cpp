#include "wwlab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wwlab {

namespace {

using nlohmann::json;

const char* name(InitialData d) {
  switch (d) {
    case InitialData::gaussian_bump: return "gaussian_bump";
    case InitialData::cosine_packet: return "cosine_packet";
    case InitialData::user_table: return "user_table";
  }
  return "";
}

const char* name(RunMode m) {
  switch (m) {
    case RunMode::simulate: return "simulate";
    case RunMode::identities: return "identities";
    case RunMode::convergence: return "convergence";
    case RunMode::normal_form_drift: return "normal_form_drift";
  }
  return "";
}

const std::vector<std::string> kTargets = {"dn_taylor1", "dn_taylor2", "dn_taylor3", "f_taylor2",
                                           "b_taylor2",  "taylor_a",   "hamiltonian_dt"};

}  // namespace

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> v;
  if (c.n_modes < 16 || c.n_modes % 2 != 0) v.push_back("n_modes: even integer >= 16 required");
  if (!(c.box_length > 0.0)) v.push_back("box_length: must be positive");
  if (c.n_z < 8) v.push_back("n_z: at least 8 nodes required");
  if (!(c.z_max >= 0.0)) v.push_back("z_max: must be >= 0 (0 selects the default)");
  if (!(c.eps1 > 0.0)) v.push_back("eps1: must be positive");
  if (!(c.eps2 < 0.5)) v.push_back("eps2 < 1/2 required");
  if (!(2.0 * c.eps1 < c.eps2)) v.push_back("eps1, eps2: 2 eps1 < eps2 required");
  if (!(c.dt > 0.0)) v.push_back("dt: must be positive");
  if (!(c.t_final >= 0.0)) v.push_back("t_final: must be >= 0");
  if (!(c.amplitude >= 0.0) || !std::isfinite(c.amplitude)) v.push_back("amplitude: must be finite and >= 0");
  if (!(c.width > 0.0)) v.push_back("width: must be positive");
  if (!(c.wavenumber > 0.0)) v.push_back("wavenumber: must be positive");
  if (!(c.s_index >= 0.0)) v.push_back("s_index: must be >= 0");
  if (!(c.beta >= 4.0)) v.push_back("beta >= 4 required");
  if (!(c.fd_delta > 0.0 && c.fd_delta < 0.5)) v.push_back("fd_delta: must lie in (0, 1/2)");
  if (c.dn != "series" && c.dn != "fixed_point") v.push_back("dn: must be series or fixed_point");
  if (c.series_order < 1 || c.series_order > 12) v.push_back("series_order: must lie in [1, 12]");
  if (c.sample_every < 1) v.push_back("sample_every: must be >= 1");
  if (c.output_dir.empty()) v.push_back("output_dir: must be non-empty");
  bool known = false;
  for (const auto& t : kTargets) known = known || t == c.target;
  if (!known) v.push_back("target: unknown convergence target '" + c.target + "'");
  if (c.initial_data == InitialData::user_table) {
    if (static_cast<int>(c.table_eta.size()) != c.n_modes || static_cast<int>(c.table_psi.size()) != c.n_modes)
      v.push_back("table_eta, table_psi: user_table needs n_modes samples each");
  }
  return v;
}

RunConfig parse_config(const std::string& text, std::vector<std::string>& violations) {
  RunConfig c;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    violations.push_back(std::string("config: not valid JSON (") + e.what() + ")");
    return c;
  }
  if (!j.is_object()) {
    violations.push_back("config: top level must be an object");
    return c;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& val = it.value();
    try {
      if (k == "n_modes") c.n_modes = val.get<int>();
      else if (k == "box_length") c.box_length = val.get<double>();
      else if (k == "n_z") c.n_z = val.get<int>();
      else if (k == "z_max") c.z_max = val.get<double>();
      else if (k == "eps1") c.eps1 = val.get<double>();
      else if (k == "eps2") c.eps2 = val.get<double>();
      else if (k == "dt") c.dt = val.get<double>();
      else if (k == "t_final") c.t_final = val.get<double>();
      else if (k == "amplitude") c.amplitude = val.get<double>();
      else if (k == "width") c.width = val.get<double>();
      else if (k == "wavenumber") c.wavenumber = val.get<double>();
      else if (k == "table_eta") c.table_eta = val.get<std::vector<double>>();
      else if (k == "table_psi") c.table_psi = val.get<std::vector<double>>();
      else if (k == "s_index") c.s_index = val.get<double>();
      else if (k == "beta") c.beta = val.get<double>();
      else if (k == "output_dir") c.output_dir = val.get<std::string>();
      else if (k == "filter_enabled") c.filter_enabled = val.get<bool>();
      else if (k == "fd_delta") c.fd_delta = val.get<double>();
      else if (k == "dn") c.dn = val.get<std::string>();
      else if (k == "series_order") c.series_order = val.get<int>();
      else if (k == "sample_every") c.sample_every = val.get<int>();
      else if (k == "target") c.target = val.get<std::string>();
      else if (k == "initial_data") {
        std::string s = val.get<std::string>();
        if (s == "gaussian_bump") c.initial_data = InitialData::gaussian_bump;
        else if (s == "cosine_packet") c.initial_data = InitialData::cosine_packet;
        else if (s == "user_table") c.initial_data = InitialData::user_table;
        else violations.push_back("initial_data: unknown value '" + s + "'");
      } else if (k == "mode") {
        std::string s = val.get<std::string>();
        if (s == "simulate") c.mode = RunMode::simulate;
        else if (s == "identities") c.mode = RunMode::identities;
        else if (s == "convergence") c.mode = RunMode::convergence;
        else if (s == "normal_form_drift") c.mode = RunMode::normal_form_drift;
        else violations.push_back("mode: unknown value '" + s + "'");
      } else if (k == "versions") {
        // Written by to_json; ignored on input so run.json can be re-run.
      } else {
        violations.push_back(k + ": unknown key");
      }
    } catch (const json::exception&) {
      violations.push_back(k + ": wrong type");
    }
  }
  return c;
}

RunConfig load_config(const std::string& path, std::vector<std::string>& violations) {
  std::ifstream in(path);
  if (!in) {
    violations.push_back("config: cannot read '" + path + "'");
    return {};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), violations);
}

std::string to_json(const RunConfig& c) {
  json j;
  j["n_modes"] = c.n_modes;
  j["box_length"] = c.box_length;
  j["n_z"] = c.n_z;
  j["z_max"] = c.z_max;
  j["eps1"] = c.eps1;
  j["eps2"] = c.eps2;
  j["dt"] = c.dt;
  j["t_final"] = c.t_final;
  j["amplitude"] = c.amplitude;
  j["width"] = c.width;
  j["wavenumber"] = c.wavenumber;
  j["initial_data"] = name(c.initial_data);
  if (c.initial_data == InitialData::user_table) {
    j["table_eta"] = c.table_eta;
    j["table_psi"] = c.table_psi;
  }
  j["s_index"] = c.s_index;
  j["beta"] = c.beta;
  j["mode"] = name(c.mode);
  j["output_dir"] = c.output_dir;
  j["filter_enabled"] = c.filter_enabled;
  j["fd_delta"] = c.fd_delta;
  j["dn"] = c.dn;
  j["series_order"] = c.series_order;
  j["sample_every"] = c.sample_every;
  j["target"] = c.target;
  return j.dump(2);
}

Grid make_grid(const RunConfig& c) { return Grid(c.n_modes, c.box_length); }

CutoffTheta make_theta(const RunConfig& c) {
  CutoffTheta th;
  th.eps1 = c.eps1;
  th.eps2 = c.eps2;
  th.validate();
  return th;
}

DNParams make_dn_params(const RunConfig& c) {
  DNParams p;
  p.n_z = c.n_z;
  if (c.z_max > 0.0) p.z_max_factor = c.z_max * make_grid(c).xi_min();
  return p;
}

SurfaceState gaussian_bump(const Grid& g, double amplitude, double width) {
  auto env = [width](double x) { return std::exp(-x * x / (2.0 * width * width)); };
  SurfaceState s{0.0, Field::from_function(g, [&](double x) { return amplitude * env(x); }),
                 Field::from_function(g, [&](double x) { return amplitude * (x / width) * env(x); })};
  fix_gauge(s);
  return s;
}

SurfaceState hermite_bump(const Grid& g, double amplitude, double width) {
  auto env = [width](double x) { return std::exp(-x * x / (2.0 * width * width)); };
  SurfaceState s{0.0, Field::from_function(g, [&](double x) {
                   return amplitude * (1.0 - x * x / (width * width)) * env(x);
                 }),
                 Field::from_function(g, [&](double x) { return amplitude * (x / width) * env(x); })};
  fix_gauge(s);
  return s;
}

SurfaceState cosine_packet(const Grid& g, double amplitude, double width, double k) {
  auto env = [width](double x) { return std::exp(-x * x / (2.0 * width * width)); };
  SurfaceState s{0.0, Field::from_function(g, [&](double x) { return amplitude * std::cos(k * x) * env(x); }),
                 Field::from_function(g, [&](double x) {
                   return amplitude * std::sin(k * x) * env(x) / std::sqrt(k);
                 })};
  fix_gauge(s);
  return s;
}

SurfaceState initial_shape(const RunConfig& c) {
  Grid g = make_grid(c);
  switch (c.initial_data) {
    case InitialData::gaussian_bump: return gaussian_bump(g, 1.0, c.width);
    case InitialData::cosine_packet: return cosine_packet(g, 1.0, c.width, c.wavenumber);
    case InitialData::user_table: {
      SurfaceState s{0.0, Field::from_samples(g, c.table_eta), Field::from_samples(g, c.table_psi)};
      fix_gauge(s);
      return s;
    }
  }
  throw std::invalid_argument("initial_shape: unknown initial data");
}

}  // namespace wwlab
