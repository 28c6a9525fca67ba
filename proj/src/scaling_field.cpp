#include "wwlab/scaling_field.hpp"

#include <cmath>
#include <sstream>

namespace wwlab {

double envelope_tail(const Field& u) {
  std::vector<double> v = fine(u);
  const int m = static_cast<int>(v.size());
  const double L = u.grid.length();
  double tail = 0.0, total = 0.0;
  for (int j = 0; j < m; ++j) {
    double x = -0.5 * L + j * L / m;
    double e = v[j] * v[j];
    total += e;
    if (std::abs(x) > 0.45 * L) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

void require_envelope(const Field& u, const char* op) {
  double t = envelope_tail(u);
  if (t > 1e-10) {
    std::ostringstream os;
    os << op << ": envelope escapes the box (relative tail mass " << t << ")";
    throw std::domain_error(os.str());
  }
}

Field multiply_x(const Field& u, double* tail) {
  std::vector<double> v = fine(u);
  const int m = static_cast<int>(v.size());
  const double L = u.grid.length();
  for (int j = 0; j < m; ++j) v[j] *= -0.5 * L + j * L / m;
  Field out = from_fine(u.grid, v);
  if (tail) {
    double full = 0.0;
    for (double w : v) full += w * w;
    full *= L / m;
    double kept = l2_norm(out);
    *tail = full > 0.0 ? std::max(0.0, full - kept * kept) / full : 0.0;
  }
  return out;
}

Field resample(const Field& u, double lambda) {
  const Grid& g = u.grid;
  std::vector<double> v(g.n());
  for (int j = 0; j < g.n(); ++j) v[j] = u.eval(lambda * lambda * g.x(j));
  return Field::from_samples(g, v);
}

SurfaceState dilate(const SurfaceState& s, double lambda) {
  if (!(lambda >= 0.5 && lambda <= 1.5)) throw std::invalid_argument("dilate: lambda in [1/2, 3/2] required");
  require_envelope(s.eta, "dilate");
  require_envelope(dx(s.psi), "dilate");
  SurfaceState o{s.t / lambda, std::pow(lambda, -2) * resample(s.eta, lambda),
                 std::pow(lambda, -3) * resample(s.psi, lambda)};
  require_envelope(o.eta, "dilate");
  require_envelope(dx(o.psi), "dilate");
  return o;
}

SurfaceState lambda_family(const DNOperator& dn, const SurfaceState& s, double lambda, double max_dt) {
  double span = (lambda - 1.0) * s.t;
  long steps = static_cast<long>(std::ceil(std::abs(span) / max_dt));
  SurfaceState e = steps > 0 ? integrate(dn, s, span / steps, steps) : s;
  return {lambda * s.t, resample(e.eta, lambda), resample(e.psi, lambda)};
}

std::pair<Field, Field> z_by_lambda_fd(const DNOperator& dn, const SurfaceState& s, double delta, double max_dt) {
  SurfaceState p = lambda_family(dn, s, 1.0 + delta, max_dt);
  SurfaceState m = lambda_family(dn, s, 1.0 - delta, max_dt);
  double h = 0.5 / delta;
  Field ze = h * (p.eta - m.eta), zp = h * (p.psi - m.psi);
  ze.c[0] = 0.0;
  zp.c[0] = 0.0;
  return {ze, zp};
}

namespace {

Field z_of(double t, const Field& dt_u, const Field& u, double& tail) {
  double tl = 0.0;
  Field out = t * dt_u + 2.0 * multiply_x(dx(u), &tl);
  tail = std::max(tail, tl);
  return out;
}


}  // namespace

ZBundle z_bundle(const DNOperator& dn, const SurfaceState& s) {
  require_envelope(s.eta, "z_bundle");
  require_envelope(dx(s.psi), "z_bundle");
  ZBundle z;
  z.state = s;
  SurfaceDiagnostics d;
  d.G = dn.apply(s.eta, s.psi);
  d.B = b_from_g(s.eta, s.psi, d.G);
  d.V = v_from_b(s.eta, s.psi, d.B);
  FlowDerivatives fd = flow_derivatives(dn, s, d, false);
  z.z_eta = z_of(s.t, fd.deta, s.eta, z.x_tail);
  z.z_psi = z_of(s.t, fd.dpsi, s.psi, z.x_tail);
  z.z_psi.c[0] = 0.0;
  z.zg = z_of(s.t, fd.dG, d.G, z.x_tail);
  z.zb = z_of(s.t, fd.dB, d.B, z.x_tail);
  z.zv = z_of(s.t, fd.dV, d.V, z.x_tail);
  return z;
}

Field f_operator(const DNOperator& dn, const Field& eta, const Field& f, const CutoffTheta& th) {
  Field g = dn.apply(eta, f);
  Field b = b_from_g(eta, f, g);
  Field v = v_from_b(eta, f, b);
  return g - abs_d(f - paraproduct(b, eta, th)) + dx(paraproduct(v, eta, th));
}

namespace {

double rel(const Field& r, const Field& ref) {
  double n = l2_norm(ref);
  return n > 0.0 ? l2_norm(r) / n : l2_norm(r);
}

}  // namespace

ZResiduals z_identity_residuals(const DNOperator& dn, const ZBundle& z, const CutoffTheta& th) {
  const SurfaceState& s = z.state;
  const Field& eta = s.eta;
  Field g = dn.apply(eta, s.psi);
  Field b = b_from_g(eta, s.psi, g);
  Field v = v_from_b(eta, s.psi, b);
  Field ep = dx(eta), bx = dx(b), vx = dx(v);
  Field w = z.z_psi - product(b, z.z_eta);  // Z psi - B Z eta
  Field gw = dn.apply(eta, w);
  Field r_g = 2.0 * (dn.apply(eta, product(eta, b)) - product(eta, dn.apply(eta, b))) + 2.0 * product(v, ep) -
              2.0 * g;
  ZResiduals r;
  r.zg = rel(z.zg - (gw - dx(product(z.z_eta, v)) + r_g), z.zg);

  Field num = -4.0 * product(v, ep) + product(product(ep, bx) - vx, z.z_eta) + r_g;
  Field r_b = pointwise({&num, &ep}, [](const double* q) { return q[0] / (1.0 + q[1] * q[1]); });
  Field bw = b_from_g(eta, w, gw);
  r.zb = rel(z.zb - (bw + r_b), z.zb);

  Field r_v = -product(r_b, ep) + product(bx, z.z_eta) - 2.0 * v;
  Field vw = v_from_b(eta, w, bw);
  r.zv = rel(z.zv - (vw + r_v), z.zv);

  // ZF = t d_t F + 2 x d_x F with d_t F by the chain rule through G, psi, B, V.
  SurfaceDiagnostics d;
  d.G = g;
  d.B = b;
  d.V = v;
  FlowDerivatives fd = flow_derivatives(dn, s, d, false);
  Field f = f_operator(dn, eta, s.psi, th);
  Field dtf = fd.dG -
              abs_d(fd.dpsi - paraproduct(fd.dB, eta, th) - paraproduct(b, fd.deta, th)) +
              dx(paraproduct(fd.dV, eta, th) + paraproduct(v, fd.deta, th));
  double tail = 0.0;
  Field zf = z_of(s.t, dtf, f, tail);
  const Field& ze = z.z_eta;
  Field rhs = f_operator(dn, eta, w, th) - 2.0 * f - abs_d(paraproduct(ze, b, th)) -
              dx(paraproduct(ze, v, th)) - abs_d(remainder(b, ze, th)) - dx(remainder(ze, v, th)) +
              2.0 * dn.apply(eta, product(eta, b)) - 2.0 * product(eta, dn.apply(eta, b)) +
              abs_d(paraproduct(r_b, eta, th)) + 2.0 * product(v, ep) + dx(paraproduct(r_v, eta, th)) +
              2.0 * abs_d(s_bilinear(b, eta, th)) + 2.0 * dx(s_bilinear(v, eta, th));
  r.zf = rel(zf - rhs, zf);
  return r;
}

double dn_covariance_error(const DNOperator& dn, const SurfaceState& s, const std::vector<double>& lambdas) {
  Field g = dn.apply(s.eta, s.psi);
  double ng = l2_norm(g), worst = 0.0;
  for (double l : lambdas) {
    SurfaceState sl = dilate(s, l);
    Field lhs = dn.apply(sl.eta, sl.psi);
    Field rhs = (1.0 / l) * resample(g, l);
    worst = std::max(worst, ng > 0.0 ? l2_norm(lhs - rhs) / ng : l2_norm(lhs - rhs));
  }
  return worst;
}

}  // namespace wwlab
