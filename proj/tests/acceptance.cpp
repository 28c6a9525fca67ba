// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "wwlab/config.hpp"
#include "wwlab/normal_form.hpp"
#include "wwlab/runner.hpp"
#include "wwlab/scaling_field.hpp"

using namespace wwlab;
using namespace wwlab::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.2e", v); }

double rel(const Field& a, const Field& b) { return rel_l2(a, b, b); }

double pair_sobolev(const FieldPair& p, double s) {
  return std::hypot(sobolev_norm(p.first, s), sobolev_norm(p.second, s));
}

// 1. |D| T_a |D| u + d_x T_a d_x u = 0 and |D| T_a d_x u - d_x T_a |D| u = 0.
Outcome cancellations() {
  Grid g(256, 64.0);
  CutoffTheta th;
  std::mt19937 rng(101);
  double worst1 = 0.0, worst2 = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Field a = random_field(g, rng, 8.0), u = random_field(g, rng, 8.0);
    Field t1 = abs_d(paraproduct(a, abs_d(u), th)), t2 = dx(paraproduct(a, dx(u), th));
    worst1 = std::max(worst1, l2_norm(t1 + t2) / l2_norm(t1));
    Field s1 = abs_d(paraproduct(a, dx(u), th)), s2 = dx(paraproduct(a, abs_d(u), th));
    worst2 = std::max(worst2, l2_norm(s1 - s2) / l2_norm(s1));
  }
  return {worst1 < 1e-12 && worst2 < 1e-12, "max rel " + sci(worst1) + ", " + sci(worst2) + " (tol 1e-12)"};
}

// 2. Paraproduct and remainder forms of the quadratic F.
Outcome f_dual_forms() {
  Grid g(256, 64.0);
  CutoffTheta th;
  std::mt19937 rng(102);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Field eta = random_field(g, rng, 4.0), psi = random_field(g, rng, 4.0);
    eta *= 0.01 / linf_norm(eta);
    Field a = f_taylor2(eta, psi, th), b = f_taylor2_remainder_form(eta, psi, th);
    worst = std::max(worst, rel(a, b));
  }
  return {worst < 1e-12, "max rel " + sci(worst) + " (tol 1e-12)"};
}

// 3. Fixed point vs the lifted elliptic oracle; flat surface through the direct oracle form.
Outcome dn_oracle_agreement() {
  Grid g(256, 64.0);
  DNParams p;
  p.n_z = 400;
  FixedPointDN fp(g, p);
  SurfaceState sh = gaussian_bump(g, 1.0, 1.0);
  Field eta = 0.01 * sh.eta;
  double e_bump = rel(fp.apply(eta, sh.psi), dn_oracle(eta, sh.psi, fp.z()));
  double e_flat = rel(dn_oracle(Field(g), sh.psi, fp.z(), OracleForm::direct), abs_d(sh.psi));
  return {e_bump < 1e-5 && e_flat < 1e-4,
          "bump " + sci(e_bump) + " (tol 1e-5), flat " + sci(e_flat) + " (tol 1e-4)"};
}

// 4. Taylor tower slopes over eps in {1e-2, 5e-3, 2.5e-3}, tolerance 0.15.
Outcome taylor_tower() {
  const std::vector<std::pair<const char*, double>> targets{{"dn_taylor1", 1.0}, {"dn_taylor2", 2.0},
                                                            {"dn_taylor3", 3.0}, {"f_taylor2", 2.0},
                                                            {"b_taylor2", 2.0},  {"taylor_a", 2.0}};
  bool ok = true;
  std::string d;
  for (auto [name, expected] : targets) {
    RunConfig c;
    c.dn = "fixed_point";
    c.amplitude = 0.01;
    c.target = name;
    ConvergenceResult r = convergence_study(c);
    ok = ok && std::abs(r.slope - expected) <= 0.15;
    d += std::string(d.empty() ? "" : ", ") + name + " " + fmt("%.3f", r.slope);
  }
  return {ok, d};
}

// 5. Hamiltonian drift at dt = 1e-3 and the slope of the drift against dt.
Outcome hamiltonian_conservation() {
  RunConfig c;
  c.amplitude = 0.01;
  c.t_final = 20.0;
  Grid g = make_grid(c);
  SeriesDN dn(c.series_order);
  SurfaceState shape = initial_shape(c);
  SurfaceState s0{0.0, c.amplitude * shape.eta, c.amplitude * shape.psi};
  double h0 = hamiltonian(dn, s0);
  SurfaceState s = integrate(dn, s0, 1e-3, 20000);
  double drift = std::abs(hamiltonian(dn, s) - h0) / h0;

  c.mode = RunMode::convergence;
  c.target = "hamiltonian_dt";
  c.dt = 0.1;  // sweep 0.1, 0.05, 0.025
  ConvergenceResult r = convergence_study(c);
  bool slope_ok = std::abs(r.slope - 4.0) <= 0.3;
  return {drift < 1e-8 && slope_ok, "drift " + sci(drift) + " (tol 1e-8), dt slope " + fmt("%.3f", r.slope) +
                                        " (expected 4.0 +- 0.3; drifts " + sci(r.errors[0]) + ", " +
                                        sci(r.errors[1]) + ", " + sci(r.errors[2]) + ")"};
}

// 6. Algebraic identities at roundoff; Euler and Taylor cross-check below 1e-3 and halving on refinement.
Outcome kinematic_identities() {
  CutoffTheta th;
  IdentityResiduals r[2];
  int i = 0;
  for (int n : {256, 512}) {
    Grid g(n, 64.0);
    FixedPointDN fp(g);
    r[i++] = identity_residuals(fp, gaussian_bump(g, 0.1, 0.5), th);
  }
  double alg = std::max({r[0].kinematic, r[0].dpsi_forms, r[0].bernoulli, r[1].kinematic, r[1].dpsi_forms,
                         r[1].bernoulli});
  bool ok = alg < 1e-12 && r[0].euler_v < 1e-3 && r[0].taylor_cross < 1e-3 &&
            r[1].euler_v <= 0.5 * r[0].euler_v && r[1].taylor_cross <= 0.5 * r[0].taylor_cross;
  return {ok, "algebraic " + sci(alg) + ", euler " + sci(r[0].euler_v) + " -> " + sci(r[1].euler_v) +
                  ", taylor " + sci(r[0].taylor_cross) + " -> " + sci(r[1].taylor_cross)};
}

// 7. Homological solver residual and operator-level homological identities.
Outcome homological_exactness() {
  Grid g(256, 64.0);
  CutoffTheta th;
  std::mt19937 rng(107);
  FieldPair v = random_pair(g, rng, 4.0), f = random_pair(g, rng, 4.0);
  SymbolPair q = q_symbols(g, th);
  HomologicalInput mq{q.first, q.second};
  SymbolPair eq = solve_homological(mq);
  SharpFlat sf = build_e_sharp_flat(g, th);
  NormalFormKit kit = build_kit(g, 4.0, th);
  HomologicalInput mb{BilinearSymbol(g) - kit.BA.first, BilinearSymbol(g) - kit.BA.second};
  double pointwise = std::max(homological_symbol_residual(eq, mq), homological_symbol_residual(kit.EA, mb));
  double cq = homological_check(eq, q, v, f);
  double cs = homological_check(sf.r_sharp, sf.m_sharp, v, f);
  double cf = homological_check(sf.r_flat, sf.m_flat, v, f);
  bool ok = pointwise < 1e-12 && cq < 1e-11 && cs < 1e-11 && cf < 1e-11;
  return {ok, "pointwise " + sci(pointwise) + ", E_A " + sci(cq) + ", E# " + sci(cs) + ", Eb " + sci(cf)};
}

// 8. Re<(Q - B) f, f>_beta and Re<(S - frak S) f, f>_beta on 50 random triples (u1, u2, f).
Outcome orthogonality() {
  Grid g(256, 64.0);
  CutoffTheta th;
  const double beta = 4.0;
  NormalFormKit kit = build_kit(g, beta, th);
  SymbolPair q = q_symbols(g, th);
  std::mt19937 rng(108);
  double wq = 0.0, ws = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    FieldPair u = random_pair(g, rng, 4.0), f = random_pair(g, rng, 4.0);
    FieldPair qf = apply(q, u, f), sf = apply(kit.S, u, f);
    wq = std::max(wq, std::abs(inner(qf - apply(kit.BA, u, f), f, beta)) / (pair_sobolev(qf, beta) * pair_sobolev(f, beta)));
    ws = std::max(ws, std::abs(inner(sf - apply(kit.frak_S, u, f), f, beta)) /
                          (pair_sobolev(sf, beta) * pair_sobolev(f, beta)));
  }
  return {wq < 1e-11 && ws < 1e-11, "Q-B " + sci(wq) + ", S-frakS " + sci(ws) + " (tol 1e-11)"};
}

// 9. Amplitude exponents of the naive and normal-form energy drifts at (0.02, 0.01), T = 10.
Outcome drift_exponents() {
  Grid g(256, 64.0);
  DriftConfig cfg;
  cfg.amplitude = 0.02;
  cfg.t_final = 10.0;
  DriftReport r = energy_drift_experiment(gaussian_bump(g, 1.0, 1.0), cfg);
  bool ok = std::abs(r.exponent_naive - 3.0) <= 0.4 && std::abs(r.exponent_phi - 4.0) <= 0.4;
  return {ok, "naive " + fmt("%.3f", r.exponent_naive) + ", phi " + fmt("%.3f", r.exponent_phi) +
                  " (tol 0.4), time-stepping share " + sci(r.rk_error_phi) +
                  (r.rk_resolved ? " resolved" : " NOT resolved")};
}

// 10. Z identities, DN scaling covariance and the shape-derivative difference quotient.
Outcome z_identities() {
  CutoffTheta th;
  ZResiduals r[2];
  int i = 0;
  for (int n : {256, 512}) {
    Grid g(n, 64.0);
    SeriesDN sd(6);
    SurfaceState s = integrate(sd, cosine_packet(g, 0.005, 1.5, 4.0), 0.01, 50);
    r[i++] = z_identity_residuals(sd, z_bundle(sd, s), th);
  }
  auto below = [](const ZResiduals& a) { return std::max({a.zg, a.zb, a.zv, a.zf}); };
  bool z_ok = below(r[1]) < 1e-3 && r[1].zg < r[0].zg && r[1].zb < r[0].zb && r[1].zv < r[0].zv && r[1].zf < r[0].zf;

  Grid g(512, 64.0);
  SeriesDN sd(6);
  double cov = dn_covariance_error(sd, cosine_packet(g, 1e-4, 1.5, 4.0), {0.8, 0.9, 1.0, 1.1, 1.2});

  Grid g2(256, 64.0);
  FixedPointDN fp(g2);
  SurfaceState s = cosine_packet(g2, 0.05, 1.5, 2.0);
  Field h = 0.1 * hermite_bump(g2, 1.0, 1.0).eta;
  Field gv = fp.apply(s.eta, s.psi), b = b_from_g(s.eta, s.psi, gv);
  Field exact = shape_derivative(fp, s.eta, h, b, v_from_b(s.eta, s.psi, b));
  std::vector<double> deltas{0.2, 0.1, 0.05}, err;
  for (double d : deltas) {
    Field fd = (0.5 / d) * (fp.apply(s.eta + d * h, s.psi) - fp.apply(s.eta - d * h, s.psi));
    err.push_back(rel(fd, exact));
  }
  double slope = loglog_slope(deltas, err);
  bool ok = z_ok && cov < 1e-8 && std::abs(slope - 2.0) <= 0.2;
  return {ok, "Z at N=512 zg " + sci(r[1].zg) + " zb " + sci(r[1].zb) + " zv " + sci(r[1].zv) + " zf " +
                  sci(r[1].zf) + (z_ok ? "" : " (not below 1e-3 or not decreasing)") + ", covariance " +
                  sci(cov) + ", shape slope " + fmt("%.3f", slope)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// 11. Repeated runs, including different worker counts, give identical bytes.
Outcome determinism() {
  namespace fs = std::filesystem;
  fs::path root = fs::temp_directory_path() / "wwlab_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::string> series, summaries;
  const char* threads[] = {"1", "4", "4"};
  for (int i = 0; i < 3; ++i) {
    setenv("WWLAB_THREADS", threads[i], 1);
    RunConfig c;
    c.t_final = 0.5;
    c.amplitude = 0.02;
    c.output_dir = (root / std::to_string(i)).string();
    run(c);
    series.push_back(slurp(root / std::to_string(i) / "series.csv"));
    summaries.push_back(slurp(root / std::to_string(i) / "summary.json"));
  }
  unsetenv("WWLAB_THREADS");
  bool ok = !series[0].empty() && series[0] == series[1] && series[1] == series[2] && summaries[0] == summaries[1] &&
            summaries[1] == summaries[2];
  return {ok, ok ? "series.csv and summary.json identical over 3 runs" : "outputs differ"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> body;
  };
  const std::vector<Criterion> all{
      {1, "exact cancellations", 5.0, cancellations},
      {2, "dual forms of quadratic F", 5.0, f_dual_forms},
      {3, "DN oracle agreement", 60.0, dn_oracle_agreement},
      {4, "Taylor tower orders", 300.0, taylor_tower},
      {5, "Hamiltonian conservation", 600.0, hamiltonian_conservation},
      {6, "kinematic identities", 300.0, kinematic_identities},
      {7, "homological exactness", 120.0, homological_exactness},
      {8, "orthogonality of the corrected flow", 120.0, orthogonality},
      {9, "energy-drift exponents", 1800.0, drift_exponents},
      {10, "Z-field identities", 600.0, z_identities},
      {11, "determinism", 600.0, determinism},
  };
  int failed = 0;
  for (const Criterion& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass && dt < c.limit_s;
    if (!pass) ++failed;
    std::printf("criterion %2d %s  %s: %s [%.1f s, limit %.0f s]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), dt, c.limit_s);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
