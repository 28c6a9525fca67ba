#include "wwlab/dirichlet_neumann.hpp"

namespace wwlab {

Field dn_taylor(const Field& eta, const Field& psi, int order) {
  require_same_grid(eta, psi, "dn_taylor");
  if (order < 1 || order > 3) throw std::invalid_argument("dn_taylor: order must be 1, 2 or 3");
  Field dpsi = abs_d(psi);
  Field out = dpsi;
  if (order == 1) return out;
  Field eta_dpsi = product(eta, dpsi);
  out -= abs_d(eta_dpsi);
  out -= dx(product(eta, dx(psi)));
  if (order == 2) return out;
  out += abs_d(product(eta, abs_d(eta_dpsi)));
  out += 0.5 * abs_d(product(eta, eta, dx(dx(psi))));
  out += 0.5 * dx(dx(product(eta, eta, dpsi)));
  return out;
}

Field b_taylor(const Field& eta, const Field& psi, int order) {
  Field out = dn_taylor(eta, psi, order);
  if (order == 1) return out;
  Field ep = dx(eta);
  out += product(ep, dx(psi));
  if (order == 3) out -= product(ep, ep, abs_d(psi));
  return out;
}

Field v_taylor(const Field& eta, const Field& psi, int order) {
  if (order < 1 || order > 3) throw std::invalid_argument("v_taylor: order must be 1, 2 or 3");
  Field out = dx(psi);
  if (order == 1) return out;
  Field b = order == 2 ? abs_d(psi) : b_taylor(eta, psi, 2);
  return out - product(dx(eta), b);
}

Field f_taylor2(const Field& eta, const Field& psi, const CutoffTheta& th) {
  require_same_grid(eta, psi, "f_taylor2");
  Field dpsi = abs_d(psi), px = dx(psi);
  Field out = -abs_d(product(eta, dpsi));
  out += abs_d(paraproduct(dpsi, eta, th));
  out -= dx(product(eta, px));
  out += dx(paraproduct(px, eta, th));
  return out;
}

Field f_taylor2_remainder_form(const Field& eta, const Field& psi, const CutoffTheta& th) {
  require_same_grid(eta, psi, "f_taylor2_remainder_form");
  return -abs_d(remainder(eta, abs_d(psi), th)) - dx(remainder(eta, dx(psi), th));
}

// P - |xi| = i xi eta'/(1 + eta'^2) - |xi| eta'^2/(1 + eta'^2).
Field p_plus_apply(const Field& eta, const Field& psi, const CutoffTheta& th) {
  require_same_grid(eta, psi, "p_plus_apply");
  Field ep = dx(eta);
  Field c1 = pointwise({&ep}, [](const double* v) { return v[0] / (1.0 + v[0] * v[0]); });
  Field c2 = pointwise({&ep}, [](const double* v) { return -v[0] * v[0] / (1.0 + v[0] * v[0]); });
  std::vector<SeparableTerm> terms{{c1, [](double xi) { return cplx(0.0, xi); }},
                                   {c2, [](double xi) { return cplx(std::abs(xi), 0.0); }}};
  return abs_d(psi) + paradifferential(terms, psi, th);
}

SymbolFn p_minus_abs_symbol(const Field& eta) {
  Field ep = dx(eta);
  Field c1 = pointwise({&ep}, [](const double* v) { return v[0] / (1.0 + v[0] * v[0]); });
  Field c2 = pointwise({&ep}, [](const double* v) { return -v[0] * v[0] / (1.0 + v[0] * v[0]); });
  return [c1, c2](double xi) { return SymbolSample{std::abs(xi) * c2, xi * c1}; };
}

}  // namespace wwlab
