#include "wwlab/evolution.hpp"

#include <cmath>
#include <string>

namespace wwlab {

void fix_gauge(SurfaceState& s) {
  s.eta.c[0] = 0.0;
  s.psi.c[0] = 0.0;
}

Tendency rhs_from_g(const SurfaceState& s, const Field& g, DpsiForm form) {
  Field ep = dx(s.eta), px = dx(s.psi);
  Tendency t;
  t.deta = g;
  if (form == DpsiForm::canonical) {
    t.dpsi = pointwise({&s.eta, &ep, &px, &g}, [](const double* v) {
      double q = v[3] + v[1] * v[2];
      return -v[0] - 0.5 * v[2] * v[2] + q * q / (2.0 * (1.0 + v[1] * v[1]));
    });
  } else {
    t.dpsi = pointwise({&s.eta, &ep, &px, &g}, [](const double* v) {
      double b = (v[3] + v[1] * v[2]) / (1.0 + v[1] * v[1]);
      double w = v[2] - b * v[1];
      return -v[0] - 0.5 * w * w - b * w * v[1] + 0.5 * b * b;
    });
  }
  return t;
}

Tendency rhs(const DNOperator& dn, const SurfaceState& s, DpsiForm form) {
  return rhs_from_g(s, dn.apply(s.eta, s.psi), form);
}

Field spectral_filter(const Field& u) {
  const int band = u.grid.band();
  const int kc = band - band / 6;
  Field out = u;
  for (int k = kc + 1; k <= band; ++k) {
    double r = static_cast<double>(k - kc) / (band - kc);
    out.c[k] *= std::exp(-36.0 * std::pow(r, 8));
  }
  return out;
}

namespace {

SurfaceState advance(const SurfaceState& s, const Tendency& k, double h) {
  SurfaceState o{s.t, s.eta + h * k.deta, s.psi + h * k.dpsi};
  fix_gauge(o);
  return o;
}

}  // namespace

SurfaceState step_rk4(const DNOperator& dn, const SurfaceState& s, double dt, const StepOptions& opt) {
  if (!std::isfinite(dt)) throw std::invalid_argument("step_rk4: dt must be finite");
  if (dt == 0.0) return s;
  Tendency k1 = rhs(dn, s);
  Tendency k2 = rhs(dn, advance(s, k1, 0.5 * dt));
  Tendency k3 = rhs(dn, advance(s, k2, 0.5 * dt));
  Tendency k4 = rhs(dn, advance(s, k3, dt));
  SurfaceState o;
  o.t = s.t + dt;
  o.eta = s.eta + (dt / 6.0) * (k1.deta + 2.0 * k2.deta + 2.0 * k3.deta + k4.deta);
  o.psi = s.psi + (dt / 6.0) * (k1.dpsi + 2.0 * k2.dpsi + 2.0 * k3.dpsi + k4.dpsi);
  fix_gauge(o);
  if (opt.filter) {
    o.eta = spectral_filter(o.eta);
    o.psi = spectral_filter(o.psi);
  }
  if (!o.eta.finite() || !o.psi.finite())
    throw NumericalError("step_rk4", "non-finite state at step " + std::to_string(opt.step_index));
  return o;
}

SurfaceState integrate(const DNOperator& dn, SurfaceState s, double dt, long steps, bool filter) {
  for (long n = 0; n < steps; ++n) s = step_rk4(dn, s, dt, {filter, n});
  return s;
}

double hamiltonian(const DNOperator& dn, const SurfaceState& s) {
  return 0.5 * inner(s.eta, s.eta) + 0.5 * inner(s.psi, dn.apply(s.eta, s.psi));
}

Field shape_derivative(const DNOperator& dn, const Field& eta, const Field& h, const Field& b, const Field& v) {
  return -dn.apply(eta, product(h, b)) - dx(product(h, v));
}

Field dt_dn(const DNOperator& dn, const SurfaceState& s) {
  Field g = dn.apply(s.eta, s.psi);
  Field b = b_from_g(s.eta, s.psi, g);
  Field v = v_from_b(s.eta, s.psi, b);
  Tendency k = rhs_from_g(s, g);
  return dn.apply(s.eta, k.dpsi - product(b, k.deta)) - dx(product(v, k.deta));
}

namespace {

// d/dt [G(eta) f] for a flow-dependent f with time derivative df.
Field dt_dn_general(const DNOperator& dn, const Field& eta, const Field& f, const Field& gf, const Field& df,
                    const Field& deta) {
  Field bf = b_from_g(eta, f, gf);
  Field vf = v_from_b(eta, f, bf);
  return dn.apply(eta, df - product(bf, deta)) - dx(product(vf, deta));
}

}  // namespace

FlowDerivatives flow_derivatives(const DNOperator& dn, const SurfaceState& s, const SurfaceDiagnostics& d,
                                 bool with_da) {
  FlowDerivatives fd;
  Tendency k = rhs_from_g(s, d.G);
  fd.deta = k.deta;
  fd.dpsi = k.dpsi;
  fd.dG = dn.apply(s.eta, fd.dpsi - product(d.B, fd.deta)) - dx(product(d.V, fd.deta));
  Field ep = dx(s.eta), px = dx(s.psi), dep = dx(fd.deta), dpx = dx(fd.dpsi);
  fd.dB = pointwise({&fd.dG, &dep, &px, &ep, &dpx, &d.B}, [](const double* w) {
    double q = 1.0 + w[3] * w[3];
    return (w[0] + w[1] * w[2] + w[3] * w[4]) / q - 2.0 * w[5] * w[3] * w[1] / q;
  });
  fd.dV = dpx - product(fd.dB, ep) - product(d.B, dep);
  if (with_da) {
    Field v2 = product(d.V, d.V), b2 = product(d.B, d.B);
    Field gv2 = dn.apply(s.eta, v2), gb2 = dn.apply(s.eta, b2), ge = dn.apply(s.eta, s.eta);
    Field dgv2 = dt_dn_general(dn, s.eta, v2, gv2, 2.0 * product(d.V, fd.dV), fd.deta);
    Field dgb2 = dt_dn_general(dn, s.eta, b2, gb2, 2.0 * product(d.B, fd.dB), fd.deta);
    Field dge = dt_dn_general(dn, s.eta, s.eta, ge, fd.deta, fd.deta);
    Field bx = dx(d.B), vx = dx(d.V), dbx = dx(fd.dB), dvx = dx(fd.dV);
    Field dn_num = product(fd.dV, bx) + product(d.V, dbx) - product(fd.dB, vx) - product(d.B, dvx) -
                   0.5 * dgv2 - 0.5 * dgb2 - dge;
    fd.da = pointwise({&dn_num, &d.a, &ep, &dep},
                      [](const double* w) { return (w[0] - 2.0 * w[1] * w[2] * w[3]) / (1.0 + w[2] * w[2]); });
  }
  return fd;
}

namespace {

double rel(const Field& r, const Field& ref) {
  double n = l2_norm(ref);
  return n > 0.0 ? l2_norm(r) / n : l2_norm(r);
}

}  // namespace

IdentityResiduals identity_residuals(const DNOperator& dn, const SurfaceState& s, const CutoffTheta& th) {
  IdentityResiduals r;
  SurfaceDiagnostics d = traces(dn, s.eta, s.psi, th);
  Tendency kc = rhs_from_g(s, d.G, DpsiForm::canonical);
  Tendency kr = rhs_from_g(s, d.G, DpsiForm::reduced);
  Field ep = dx(s.eta), px = dx(s.psi);
  // Algebraic identities with B and V formed pointwise on the dealiasing grid.
  Field kin = pointwise({&kc.deta, &ep, &px}, [](const double* w) {
    double b = (w[0] + w[1] * w[2]) / (1.0 + w[1] * w[1]);
    double v = w[2] - b * w[1];
    return w[0] - (b - v * w[1]);
  });
  r.kinematic = rel(kin, kc.deta);
  r.dpsi_forms = rel(kc.dpsi - kr.dpsi, kc.dpsi);
  Field bern = pointwise({&kc.dpsi, &kc.deta, &ep, &px, &s.eta}, [](const double* w) {
    double b = (w[1] + w[2] * w[3]) / (1.0 + w[2] * w[2]);
    double v = w[3] - b * w[2];
    return w[0] + v * w[3] + w[4] - 0.5 * v * v - 0.5 * b * b;
  });
  r.bernoulli = rel(bern, kc.dpsi);
  FlowDerivatives fd = flow_derivatives(dn, s, d, false);
  Field ev = fd.dV + product(d.V, dx(d.V)) + product(d.a, ep);
  r.euler_v = rel(ev, fd.dV);
  Field a_flow = fd.dB + product(d.V, dx(d.B));
  a_flow.c[0] += 1.0;
  Field a_minus_1 = d.a;
  a_minus_1.c[0] -= 1.0;
  r.taylor_cross = rel(a_flow - d.a, a_minus_1);
  return r;
}

}  // namespace wwlab
