#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "wwlab/spectral.hpp"

using namespace wwlab;
using namespace wwlab::testing;

TEST_CASE("grid nodes and wavenumbers") {
  Grid g(64, 2.0 * std::numbers::pi);
  CHECK(g.x(0) == doctest::Approx(-std::numbers::pi));
  CHECK(g.xi(3) == doctest::Approx(3.0));
  CHECK(g.band() == 31);
  CHECK_THROWS(Grid(63, 1.0));
}

TEST_CASE("samples round trip and the Nyquist mode stays zero") {
  Grid g(32, 10.0);
  std::mt19937 rng(3);
  Field u = random_field(g, rng, 2.0);
  Field v = Field::from_samples(g, u.samples());
  CHECK(rel_l2(v, u, u) < 1e-14);
  CHECK(v.c[g.n() / 2] == cplx(0.0, 0.0));
  CHECK(u.eval(g.x(5)) == doctest::Approx(u.samples()[5]).epsilon(1e-12));
}

TEST_CASE("Fourier multipliers on single modes") {
  Grid g(64, 2.0 * std::numbers::pi);
  Field c = cosine(g, 5), s = sine(g, 5);
  CHECK(rel_l2(dx(s), 5.0 * c, c) < 1e-13);
  CHECK(rel_l2(abs_d(c), 5.0 * c, c) < 1e-13);
  CHECK(rel_l2(abs_d(c, 0.5), std::sqrt(5.0) * c, c) < 1e-13);
  CHECK(rel_l2(hilbert(c), -1.0 * s, s) < 1e-13);
  CHECK(rel_l2(japanese(c, 1.0), std::sqrt(26.0) * c, c) < 1e-13);
  CHECK(rel_l2(exp_abs_d(c, -0.1), std::exp(-0.5) * c, c) < 1e-13);
}

TEST_CASE("multiplier without conjugate symmetry is rejected") {
  Grid g(16, 1.0);
  CHECK_THROWS(apply_multiplier(cosine(g, 1), [](double xi) { return cplx(xi, 0.0); }));
  Field with_mean = cosine(g, 1);
  with_mean.c[0] = 1.0;
  auto inv_sqrt = [](double xi) { return cplx(1.0 / std::sqrt(std::abs(xi)), 0.0); };
  CHECK_THROWS(apply_multiplier(with_mean, inv_sqrt));
  CHECK_NOTHROW(apply_multiplier(cosine(g, 1), inv_sqrt));
}

TEST_CASE("dealiased products are exact for band-limited factors") {
  Grid g(64, 2.0 * std::numbers::pi);
  // cos(20x) cos(11x) = (cos 31x + cos 9x) / 2; 31 is the top retained mode.
  Field p = product(cosine(g, 20), cosine(g, 11));
  Field e = 0.5 * (cosine(g, 31) + cosine(g, 9));
  CHECK(rel_l2(p, e, e) < 1e-13);
  // Products beyond the band are truncated, never aliased.
  Field q = product(cosine(g, 20), cosine(g, 20));
  CHECK(std::abs(q.c[24]) < 1e-14);
  CHECK(q.mean() == doctest::Approx(0.5));
}

TEST_CASE("Littlewood-Paley blocks partition the spectrum") {
  Grid g(256, 50.0);
  std::mt19937 rng(5);
  Field u = random_field(g, rng, 10.0);
  Field sum(g);
  for (int j = -1; j <= lp_max_block(g); ++j) sum += lp_block(u, j);
  CHECK(rel_l2(sum, u, u) < 1e-13);
  CHECK(lp_low(0.5) == 1.0);
  CHECK(lp_low(1.0) == 0.0);
}

TEST_CASE("norm conventions") {
  Grid g(64, 2.0 * std::numbers::pi);
  Field c = cosine(g, 3);
  // ||cos 3x||^2 = pi on [0, 2 pi); the H^s weight is <3>^{2s} = 10^s.
  CHECK(l2_norm(c) == doctest::Approx(std::sqrt(std::numbers::pi)));
  CHECK(sobolev_norm(c, 1.0) == doctest::Approx(std::sqrt(10.0 * std::numbers::pi)));
  CHECK(inner(c, c, 2.0) == doctest::Approx(100.0 * std::numbers::pi));
  CHECK(linf_norm(c) == doctest::Approx(1.0));
  CHECK(zygmund_norm(Field(g), 4.0) == 0.0);
  CHECK(sobolev_norm(Field(g), 3.0) == 0.0);
}

TEST_CASE("Parseval against the collocation sum") {
  Grid g(128, 20.0);
  std::mt19937 rng(11);
  Field u = random_field(g, rng, 3.0);
  double sum = 0.0;
  for (double v : u.samples()) sum += v * v;
  CHECK(l2_norm(u) * l2_norm(u) == doctest::Approx(sum * g.length() / g.n()).epsilon(1e-12));
}

TEST_CASE("composed derivatives and linearity") {
  Grid g(128, 20.0);
  std::mt19937 rng(13);
  Field u = random_field(g, rng, 3.0), v = random_field(g, rng, 3.0);
  Field d2 = apply_multiplier(u, [](double xi) { return cplx(-xi * xi, 0.0); });
  CHECK(rel_l2(dx(dx(u)), d2, d2) < 1e-13);
  Field lhs = abs_d(2.0 * u - 3.0 * v, 0.5), rhs = 2.0 * abs_d(u, 0.5) - 3.0 * abs_d(v, 0.5);
  CHECK(rel_l2(lhs, rhs, rhs) < 1e-14);
  Field id = apply_multiplier(u, [](double) { return cplx(1.0, 0.0); });
  CHECK(id.c == u.c);
}

TEST_CASE("blocks two apart do not overlap") {
  Grid g(512, 100.0);
  std::mt19937 rng(17);
  Field u = random_field(g, rng, 40.0);
  for (int j = -1; j <= lp_max_block(g); ++j)
    for (int k = j + 2; k <= lp_max_block(g); ++k) CHECK(l2_norm(lp_block(lp_block(u, j), k)) < 1e-14 * l2_norm(u));
}
