#include <cmath>
#include <sstream>

#include "wwlab/dirichlet_neumann.hpp"

namespace wwlab {

Field b_from_g(const Field& eta, const Field& psi, const Field& g) {
  Field ep = dx(eta), px = dx(psi);
  return pointwise({&ep, &px, &g}, [](const double* v) { return (v[2] + v[0] * v[1]) / (1.0 + v[0] * v[0]); });
}

Field v_from_b(const Field& eta, const Field& psi, const Field& b) { return dx(psi) - product(b, dx(eta)); }

// a = [1 + V B' - B V' - G(V^2)/2 - G(B^2)/2 - G(eta) eta] / (1 + eta'^2).
Field taylor_coefficient(const DNOperator& dn, const Field& eta, const Field& b, const Field& v) {
  Field gv = dn.apply(eta, product(v, v));
  Field gb = dn.apply(eta, product(b, b));
  Field ge = dn.apply(eta, eta);
  Field bx = dx(b), vx = dx(v), ep = dx(eta);
  return pointwise({&v, &bx, &b, &vx, &gv, &gb, &ge, &ep}, [](const double* w) {
    return (1.0 + w[0] * w[1] - w[2] * w[3] - 0.5 * w[4] - 0.5 * w[5] - w[6]) / (1.0 + w[7] * w[7]);
  });
}

SurfaceDiagnostics traces(const DNOperator& dn, const Field& eta, const Field& psi, const CutoffTheta& th) {
  SurfaceDiagnostics d;
  d.G = dn.apply(eta, psi);
  d.B = b_from_g(eta, psi, d.G);
  d.V = v_from_b(eta, psi, d.B);
  d.omega = psi - paraproduct(d.B, eta, th);
  d.F = d.G - abs_d(d.omega) + dx(paraproduct(d.V, eta, th));
  d.a = taylor_coefficient(dn, eta, d.B, d.V);
  auto av = d.a.samples(2 * eta.grid.n());
  double amin = INFINITY;
  for (double x : av) amin = std::min(amin, x);
  if (!(amin > 0.0)) {
    std::ostringstream os;
    os << "Taylor sign violated, min a = " << amin;
    throw NumericalError("traces", os.str());
  }
  d.alpha = pointwise({&d.a}, [](const double* w) { return std::sqrt(w[0]) - 1.0; });
  return d;
}

}  // namespace wwlab
