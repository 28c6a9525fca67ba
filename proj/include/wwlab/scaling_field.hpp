#pragma once

#include "wwlab/evolution.hpp"

namespace wwlab {

// Relative L2 mass of u on the 2N grid outside |x| <= 0.45 L.
double envelope_tail(const Field& u);
// Throws std::domain_error naming op when the tail exceeds 1e-10.
// States are checked through eta and psi': psi is defined modulo constants.
void require_envelope(const Field& u, const char* op);

// x u computed on the 2N grid and truncated to the band; tail receives the relative energy dropped.
Field multiply_x(const Field& u, double* tail = nullptr);

// u(lambda^2 x) by trigonometric interpolation at the dilated points.
Field resample(const Field& u, double lambda);

// eta_l(x) = l^-2 eta(l^2 x), psi_l(x) = l^-3 psi(l^2 x), time label t / l.
SurfaceState dilate(const SurfaceState& s, double lambda);

// (eta, psi)(lambda t, lambda^2 x): evolved by (lambda - 1) t with RK4 steps of at most max_dt, then resampled.
SurfaceState lambda_family(const DNOperator& dn, const SurfaceState& s, double lambda, double max_dt = 0.01);

// Centered difference in lambda of lambda_family at lambda = 1.
std::pair<Field, Field> z_by_lambda_fd(const DNOperator& dn, const SurfaceState& s, double delta,
                                       double max_dt = 0.01);

// Z = t d_t + 2 x d_x applied to eta, psi, G, B, V. The zero mode of z_psi is dropped (gauge).
struct ZBundle {
  SurfaceState state;
  Field z_eta, z_psi, zg, zb, zv;
  double x_tail = 0.0;  // largest relative energy dropped by x-multiplication
};
ZBundle z_bundle(const DNOperator& dn, const SurfaceState& s);

struct ZResiduals {
  double zg = 0.0;  // ZG identity
  double zb = 0.0;  // ZB identity
  double zv = 0.0;  // ZV identity
  double zf = 0.0;  // ZF identity
};
// Relative L2 residuals; every DN application uses dn.
ZResiduals z_identity_residuals(const DNOperator& dn, const ZBundle& z, const CutoffTheta& th);

// F(eta) f = G f - |D|(f - T_{B_f} eta) + d_x(T_{V_f} eta).
Field f_operator(const DNOperator& dn, const Field& eta, const Field& f, const CutoffTheta& th);

// max over the sweep of ||G(eta_l) psi_l - l^-1 (G psi)(l^2 .)|| / ||G psi||.
double dn_covariance_error(const DNOperator& dn, const SurfaceState& s, const std::vector<double>& lambdas);

}  // namespace wwlab
