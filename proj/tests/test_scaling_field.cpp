#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "support.hpp"
#include "wwlab/config.hpp"
#include "wwlab/runner.hpp"
#include "wwlab/scaling_field.hpp"

using namespace wwlab;
using namespace wwlab::testing;

namespace {

double rel(const Field& a, const Field& b) { return rel_l2(a, b, b); }

// Packet evolved to t = 0.5 so that the t d_t part of Z is active.
SurfaceState evolved_packet(const Grid& g, double amp) {
  SeriesDN sd(6);
  return integrate(sd, cosine_packet(g, amp, 1.5, 4.0), 0.01, 50);
}

}  // namespace

TEST_CASE("envelope condition") {
  Grid g(256, 64.0);
  SurfaceState p = cosine_packet(g, 1.0, 1.5, 4.0);
  CHECK(envelope_tail(p.eta) < 1e-12);
  CHECK_NOTHROW(require_envelope(p.eta, "test"));
  SurfaceState wide = cosine_packet(g, 1.0, 10.0, 4.0);
  CHECK_THROWS_AS(require_envelope(wide.eta, "test"), std::domain_error);
  CHECK_THROWS_AS(dilate(wide, 1.1), std::domain_error);
}

TEST_CASE("x-multiplication and resampling of a Gaussian") {
  Grid g(256, 64.0);
  Field u = Field::from_function(g, [](double x) { return std::exp(-x * x / 2); });
  double tail = 1.0;
  Field xu = multiply_x(u, &tail);
  Field want = Field::from_function(g, [](double x) { return x * std::exp(-x * x / 2); });
  CHECK(rel(xu, want) < 1e-14);
  CHECK(tail < 1e-14);
  for (double l : {0.8, 1.0, 1.2}) {
    Field r = resample(u, l);
    Field exact = Field::from_function(g, [&](double x) { return std::exp(-l * l * l * l * x * x / 2); });
    CHECK(rel(r, exact) < 1e-13);
  }
}

TEST_CASE("dilation at lambda = 1 and outside the admissible range") {
  Grid g(256, 64.0);
  SurfaceState s = cosine_packet(g, 0.01, 1.5, 4.0);
  s.t = 0.3;
  SurfaceState d = dilate(s, 1.0);
  CHECK(d.t == s.t);
  CHECK(rel(d.eta, s.eta) < 1e-14);
  CHECK(rel(d.psi, s.psi) < 1e-14);
  CHECK_THROWS_AS(dilate(s, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(dilate(s, 1.6), std::invalid_argument);
}

TEST_CASE("Hamiltonian of the dilated state scales as lambda^-6") {
  Grid g(512, 64.0);
  SeriesDN sd(6);
  SurfaceState s = cosine_packet(g, 1e-3, 1.5, 4.0);
  double h = hamiltonian(sd, s);
  for (double l : {0.8, 0.9, 1.1, 1.2})
    CHECK(hamiltonian(sd, dilate(s, l)) == doctest::Approx(std::pow(l, -6) * h).epsilon(1e-8));
}

TEST_CASE("DN scaling covariance over a five-point sweep") {
  Grid g(512, 64.0);
  SeriesDN sd(6);
  SurfaceState s = cosine_packet(g, 1e-4, 1.5, 4.0);
  CHECK(dn_covariance_error(sd, s, {0.8, 0.9, 1.0, 1.1, 1.2}) < 1e-8);
}

TEST_CASE("Z bundle at rest and at t = 0") {
  Grid g(256, 64.0);
  SeriesDN sd(6);
  CutoffTheta th;
  ZBundle rest = z_bundle(sd, {0.0, Field(g), Field(g)});
  for (const Field* f : {&rest.z_eta, &rest.z_psi, &rest.zg, &rest.zb, &rest.zv}) CHECK(l2_norm(*f) == 0.0);
  ZResiduals rr = z_identity_residuals(sd, rest, th);
  CHECK(rr.zg == 0.0);
  CHECK(rr.zb == 0.0);
  CHECK(rr.zv == 0.0);
  CHECK(rr.zf == 0.0);

  SurfaceState s = cosine_packet(g, 0.01, 1.5, 4.0);
  ZBundle z = z_bundle(sd, s);
  CHECK(rel(z.z_eta, 2.0 * multiply_x(dx(s.eta))) < 1e-15);
}

TEST_CASE("Z of eta and psi matches a centered difference in lambda") {
  Grid g(256, 64.0);
  SeriesDN sd(6);
  SurfaceState s = evolved_packet(g, 0.005);
  ZBundle z = z_bundle(sd, s);
  std::vector<double> deltas{0.02, 0.01, 0.005}, e_eta, e_psi;
  for (double d : deltas) {
    auto [fe, fp] = z_by_lambda_fd(sd, s, d);
    e_eta.push_back(rel(fe, z.z_eta));
    e_psi.push_back(rel(fp, z.z_psi));
  }
  CHECK(loglog_slope(deltas, e_eta) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(loglog_slope(deltas, e_psi) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("Z identities converge under refinement") {
  CutoffTheta th;
  ZResiduals r[2];
  int i = 0;
  for (int n : {256, 512}) {
    Grid g(n, 64.0);
    SeriesDN sd(6);
    SurfaceState s = evolved_packet(g, 0.005);
    r[i++] = z_identity_residuals(sd, z_bundle(sd, s), th);
  }
  CHECK(r[1].zg < 1e-3);
  CHECK(r[1].zb < 1e-3);
  CHECK(r[1].zv < 1e-3);
  CHECK(r[1].zf < 1e-3);
  CHECK(r[1].zg < r[0].zg);
  CHECK(r[1].zb < r[0].zb);
  CHECK(r[1].zv < r[0].zv);
  CHECK(r[1].zf < r[0].zf);
}

TEST_CASE("Z residuals do not see a constant added to psi") {
  Grid g(256, 64.0);
  SeriesDN sd(6);
  CutoffTheta th;
  SurfaceState s = cosine_packet(g, 0.01, 1.5, 4.0);
  ZResiduals a = z_identity_residuals(sd, z_bundle(sd, s), th);
  s.psi.c[0] += 0.7;
  ZResiduals b = z_identity_residuals(sd, z_bundle(sd, s), th);
  CHECK(std::abs(a.zg - b.zg) < 1e-12);
  CHECK(std::abs(a.zb - b.zb) < 1e-12);
  CHECK(std::abs(a.zv - b.zv) < 1e-12);
  CHECK(std::abs(a.zf - b.zf) < 1e-12);
}
