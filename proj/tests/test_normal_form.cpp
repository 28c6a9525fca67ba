#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "support.hpp"
#include "wwlab/config.hpp"
#include "wwlab/normal_form.hpp"
#include "wwlab/runner.hpp"

using namespace wwlab;
using namespace wwlab::testing;

namespace {

double pair_norm(const FieldPair& p) { return std::hypot(l2_norm(p.first), l2_norm(p.second)); }

double pair_sobolev(const FieldPair& p, double s) { return std::hypot(sobolev_norm(p.first, s), sobolev_norm(p.second, s)); }

double rel_pair(const FieldPair& a, const FieldPair& b) { return pair_norm(a - b) / pair_norm(b); }

// Re<a, f>_{H^s} / (|a|_s |f|_s).
double pairing(const FieldPair& a, const FieldPair& f, double s) {
  return inner(a, f, s) / (pair_sobolev(a, s) * pair_sobolev(f, s));
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double max_entry(const BilinearSymbol& a) {
  double m = 0.0;
  for (const Mat2& e : a.v)
    for (const cplx& z : e) m = std::max(m, std::abs(z));
  return m;
}

double max_diff(const SymbolPair& a, const SymbolPair& b) {
  return std::max(max_entry(a.first - b.first), max_entry(a.second - b.second));
}

SymbolPair negated(const SymbolPair& a) {
  SymbolPair z{BilinearSymbol(a.first.grid), BilinearSymbol(a.first.grid)};
  return z - a;
}

SymmetrizedState from_pairs(const FieldPair& u, const FieldPair& U) {
  SymmetrizedState y;
  y.u1 = u.first;
  y.u2 = u.second;
  y.U1 = U.first;
  y.U2 = U.second;
  y.V = Field(u.first.grid);
  y.alpha = Field(u.first.grid);
  return y;
}

struct Fixture {
  Grid g{128, 32.0};
  CutoffTheta th;
  std::mt19937 rng{17};
  FieldPair v = random_pair(g, rng, 4.0), f = random_pair(g, rng, 4.0), w = random_pair(g, rng, 4.0);
};

}  // namespace

TEST_CASE("delta and the determinant on the worked pairs") {
  CHECK(homological_delta(1.0, 4.0) == 0.0);
  CHECK(homological_det(1.0, 4.0) == -16.0);
  CHECK(homological_delta(-1.0, 4.0) == -2.0);
  CHECK(homological_det(-1.0, 4.0) == -12.0);
}

TEST_CASE("homological solver: zero input and random low-high input") {
  Grid g(64, 16.0);
  HomologicalInput zero{BilinearSymbol(g), BilinearSymbol(g)};
  SymbolPair a0 = solve_homological(zero);
  CHECK(max_entry(a0.first) == 0.0);
  CHECK(max_entry(a0.second) == 0.0);

  std::mt19937 rng(4);
  std::normal_distribution<double> n;
  HomologicalInput m{BilinearSymbol(g, SupportTag::lowhigh, 0.4), BilinearSymbol(g, SupportTag::lowhigh, 0.4)};
  const int band = g.band();
  for (int k1 = -band; k1 <= band; ++k1)
    for (int k2 = -band; k2 <= band; ++k2) {
      double x1 = g.xi(k1), x2 = g.xi(k2);
      if (k1 == 0 || std::abs(x2) < 1.0 || std::abs(x1) > 0.4 * std::abs(x2)) continue;
      for (int i = 0; i < 4; ++i) {
        m.M1(k1, k2)[i] = cplx(n(rng), n(rng));
        m.M2(k1, k2)[i] = cplx(n(rng), n(rng));
      }
    }
  CHECK(homological_symbol_residual(solve_homological(m), m) < 1e-12);
}

TEST_CASE("homological solver names a degenerate supported pair") {
  Grid g(64, 16.0);
  HomologicalInput m{BilinearSymbol(g), BilinearSymbol(g)};
  m.M1(0, 5)[0] = 1.0;
  bool thrown = false;
  try {
    solve_homological(m);
  } catch (const std::domain_error& e) {
    thrown = true;
    CHECK(std::string(e.what()).find("(0, 5)") != std::string::npos);
  }
  CHECK(thrown);
}

TEST_CASE("sharp and flat correctors vanish on their sign sets and off the zeta support") {
  Grid g(64, 16.0);
  CutoffTheta th;
  SharpFlat sf = build_e_sharp_flat(g, th);
  const int band = g.band();
  for (int k1 = -band; k1 <= band; ++k1)
    for (int k2 = -band; k2 <= band; ++k2) {
      if (std::abs(k1 + k2) > band) continue;
      double x1 = g.xi(k1), x2 = g.xi(k2);
      auto zero = [&](const BilinearSymbol& s) {
        for (const cplx& z : s(k1, k2))
          if (z != 0.0) return false;
        return true;
      };
      if (sgn(x1) == sgn(x1 + x2)) CHECK(zero(sf.r_sharp.first));
      if (sgn(x1) != sgn(x2)) CHECK(zero(sf.r_flat.first));
      if (th.zeta(x1, x2) == 0.0) {
        CHECK(zero(sf.r_sharp.first));
        CHECK(zero(sf.r_sharp.second));
        CHECK(zero(sf.r_flat.first));
        CHECK(zero(sf.r_flat.second));
      }
    }
}

TEST_CASE("symbol tables reproduce the Q and S operators") {
  Fixture fx;
  SymmetrizedState y = from_pairs(fx.v, fx.f);
  SymbolPair q = q_symbols(fx.g, fx.th);
  SharpFlat sf = build_e_sharp_flat(fx.g, fx.th);
  CHECK(rel_pair(apply(q, fx.v, fx.f), qsc_apply(y, QSC::Q, fx.f, fx.th)) < 1e-13);
  CHECK(rel_pair(apply(sf.m_sharp + sf.m_flat, fx.v, fx.f), qsc_apply(y, QSC::S, fx.f, fx.th)) < 1e-13);
}

TEST_CASE("homological identities hold on random data") {
  Fixture fx;
  SymbolPair q = q_symbols(fx.g, fx.th);
  HomologicalInput mq{q.first, q.second};
  SymbolPair eq = solve_homological(mq);
  CHECK(homological_symbol_residual(eq, mq) < 1e-12);
  CHECK(homological_check(eq, q, fx.v, fx.f) < 1e-11);

  SharpFlat sf = build_e_sharp_flat(fx.g, fx.th);
  CHECK(homological_symbol_residual(sf.r_sharp, {sf.m_sharp.first, sf.m_sharp.second}) < 1e-12);
  CHECK(homological_symbol_residual(sf.r_flat, {sf.m_flat.first, sf.m_flat.second}) < 1e-12);
  CHECK(homological_check(sf.r_sharp, sf.m_sharp, fx.v, fx.f) < 1e-11);
  CHECK(homological_check(sf.r_flat, sf.m_flat, fx.v, fx.f) < 1e-11);

  WeightedCorrectors wc = build_weighted(fx.g, 4.0, fx.th);
  CHECK(homological_check(wc.e_sharp, wc.frak_sharp, fx.v, fx.f) < 1e-11);
  CHECK(homological_check(wc.e_flat, wc.frak_flat, fx.v, fx.f) < 1e-11);

  NormalFormKit kit = build_kit(fx.g, 4.0, fx.th);
  CHECK(homological_check(kit.EA, negated(kit.BA), fx.v, fx.f) < 1e-11);
  CHECK(homological_check(kit.ER, kit.frak_S, fx.v, fx.f) < 1e-11);

  FieldPair zero{Field(fx.g), Field(fx.g)};
  CHECK(homological_check(eq, q, zero, fx.f) == 0.0);
}

TEST_CASE("B(v) is self-adjoint and carries the H^s-real part of Q(v)") {
  Fixture fx;
  const double s = 4.0;
  SymbolPair q = q_symbols(fx.g, fx.th);
  SymbolPair b = build_b_of_v(fx.g, s, fx.th);
  CHECK(max_diff(adjoint(b), b) < 1e-14 * max_entry(b.first));
  FieldPair bf = apply(b, fx.v, fx.f), bw = apply(b, fx.v, fx.w);
  CHECK(std::abs(inner(bf, fx.w) - inner(fx.f, bw)) < 1e-12 * pair_norm(bf) * pair_norm(fx.w));
  CHECK(std::abs(pairing(apply(q, fx.v, fx.f) - bf, fx.f, s)) < 1e-11);
  FieldPair zero{Field(fx.g), Field(fx.g)};
  CHECK(pair_norm(apply(b, zero, fx.f)) == 0.0);

  // Weighted symmetrization at symbol level: W(xi1+xi2) X + adjoint(W(xi1+xi2) X) agrees for X = B and X = Q.
  ScalarTable wo(fx.g);
  const int band = fx.g.band();
  for (int k1 = -band; k1 <= band; ++k1)
    for (int k2 = -band; k2 <= band; ++k2) wo(k1, k2) = bracket_weight(fx.g, k1 + k2, s);
  SymbolPair wb{scale(b.first, wo), scale(b.second, wo)}, wq{scale(q.first, wo), scale(q.second, wo)};
  CHECK(max_diff(wb + adjoint(wb), wq + adjoint(wq)) < 1e-13 * max_entry(wq.first));
}

TEST_CASE("weights pair to one under the adjoint reflection") {
  Grid g(64, 16.0);
  for (double beta : {0.0, 1.0, 4.0}) {
    ScalarTable w = weight_table(g, beta);
    const int band = g.band();
    double worst = 0.0;
    for (int k1 = -band; k1 <= band; ++k1)
      for (int k2 = -band; k2 <= band; ++k2) {
        int r1 = -k1, r2 = k1 + k2;
        if (std::abs(r2) > band) continue;
        worst = std::max(worst, std::abs(w(k1, k2) + w(r1, r2) - 1.0));
      }
    CHECK(worst < 1e-15);
  }
  CHECK_THROWS_AS(build_weighted(g, -1.0, CutoffTheta{}), std::invalid_argument);
}

TEST_CASE("weighted right-hand sides keep the H^beta-real part of S") {
  Fixture fx;
  const double beta = 4.0;
  SymmetrizedState y = from_pairs(fx.v, fx.f);
  SharpFlat sf = build_e_sharp_flat(fx.g, fx.th);
  WeightedCorrectors wc = build_weighted(fx.g, beta, fx.th);
  FieldPair ss = apply(sf.m_sharp, fx.v, fx.f), sb = apply(sf.m_flat, fx.v, fx.f);
  CHECK(std::abs(inner(ss - apply(wc.frak_sharp, fx.v, fx.f), fx.f, beta)) <
        1e-11 * pair_sobolev(ss, beta) * pair_sobolev(fx.f, beta));
  CHECK(std::abs(inner(sb - apply(wc.frak_flat, fx.v, fx.f), fx.f, beta)) <
        1e-11 * pair_sobolev(sb, beta) * pair_sobolev(fx.f, beta));
  FieldPair s_full = qsc_apply(y, QSC::S, fx.f, fx.th);
  NormalFormKit kit = build_kit(fx.g, beta, fx.th);
  CHECK(std::abs(pairing(s_full - apply(kit.frak_S, fx.v, fx.f), fx.f, beta)) < 1e-11);
  FieldPair zero{Field(fx.g), Field(fx.g)};
  CHECK(pair_norm(apply(wc.e_sharp + wc.e_flat, zero, fx.f)) == 0.0);
}

TEST_CASE("normal form transform: identity at rest, linear deviation, determinism") {
  Grid g(256, 64.0);
  CutoffTheta th;
  SeriesDN sd(6);
  NormalFormKit kit = build_kit(g, 4.0, th);
  SurfaceState sh = cosine_packet(g, 1.0, 1.5, 2.0);

  SymmetrizedState rest = symmetrize(sd, {0.0, Field(g), Field(g)}, th);
  CHECK(pair_norm(phi_transform(rest, kit)) == 0.0);

  std::mt19937 rng(2);
  FieldPair U = random_pair(g, rng, 4.0);
  SymmetrizedState flat = from_pairs({Field(g), Field(g)}, U);
  FieldPair p0 = phi_transform(flat, kit);
  CHECK(p0.first.c == U.first.c);
  CHECK(p0.second.c == U.second.c);

  std::vector<double> eps{0.02, 0.01, 0.005}, dev;
  for (double e : eps) {
    SymmetrizedState y = symmetrize(sd, {0.0, e * sh.eta, e * sh.psi}, th);
    FieldPair Uy{y.U1, y.U2};
    dev.push_back(pair_norm(phi_transform(y, kit) - Uy) / pair_norm(Uy));
  }
  CHECK(loglog_slope(eps, dev) == doctest::Approx(1.0).epsilon(0.05));

  SymmetrizedState y = symmetrize(sd, {0.0, 0.02 * sh.eta, 0.02 * sh.psi}, th);
  FieldPair a = phi_transform(y, kit), b = phi_transform(y, build_kit(g, 4.0, th));
  CHECK(a.first.c == b.first.c);
  CHECK(a.second.c == b.second.c);
}

TEST_CASE("zero-amplitude drift run keeps both energies at zero") {
  Grid g(64, 16.0);
  DriftConfig cfg;
  cfg.t_final = 0.5;
  cfg.dt = 0.05;
  cfg.sample_every = 2;
  NormalFormKit kit = build_kit(g, cfg.beta, cfg.theta);
  DriftRun r = energy_drift_run(gaussian_bump(g, 1.0, 1.0), 0.0, cfg.dt, cfg, kit);
  CHECK(r.t.size() >= 2);
  CHECK(r.drift_naive == 0.0);
  CHECK(r.drift_phi == 0.0);
  for (double e : r.energy_phi) CHECK(e == 0.0);
}
