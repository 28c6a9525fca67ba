#pragma once

#include "wwlab/dirichlet_neumann.hpp"
#include "wwlab/paradiff.hpp"

namespace wwlab {

// Snapshot of the free surface. Gauge: mean(eta) = 0 and the zero mode of psi is 0.
struct SurfaceState {
  double t = 0.0;
  Field eta, psi;
};

void fix_gauge(SurfaceState& s);

struct Tendency {
  Field deta, dpsi;
};

// canonical: -eta - psi'^2/2 + (G + eta' psi')^2 / (2 (1 + eta'^2));
// reduced:   -eta - V^2/2 - B V eta' + B^2/2 with B, V formed pointwise from G.
enum class DpsiForm { canonical, reduced };

// dpsi keeps its zero mode; step_rk4 removes it through the gauge.
Tendency rhs(const DNOperator& dn, const SurfaceState& s, DpsiForm form = DpsiForm::canonical);
Tendency rhs_from_g(const SurfaceState& s, const Field& g, DpsiForm form = DpsiForm::canonical);

// exp(-36 r^8) on the top sixth of the band, r the position inside that sixth.
Field spectral_filter(const Field& u);

struct StepOptions {
  bool filter = false;
  long step_index = 0;
};

// Classical four-stage step; any finite dt, including dt <= 0.
SurfaceState step_rk4(const DNOperator& dn, const SurfaceState& s, double dt, const StepOptions& opt = {});
SurfaceState integrate(const DNOperator& dn, SurfaceState s, double dt, long steps, bool filter = false);

// (1/2) int eta^2 + (1/2) int psi G(eta) psi.
double hamiltonian(const DNOperator& dn, const SurfaceState& s);

// Derivative of G(eta)psi in eta along h: -G(eta)(h B) - d_x(h V).
Field shape_derivative(const DNOperator& dn, const Field& eta, const Field& h, const Field& b, const Field& v);

// d/dt G(eta)psi = G(eta)(psi_t - B eta_t) - d_x(V eta_t), with eta_t, psi_t from rhs.
Field dt_dn(const DNOperator& dn, const SurfaceState& s);

// Time derivatives of the surface traces along the flow, by the chain rule.
struct FlowDerivatives {
  Field deta, dpsi;  // dpsi with its zero mode
  Field dG, dB, dV;
  Field da;          // only when requested
};
FlowDerivatives flow_derivatives(const DNOperator& dn, const SurfaceState& s, const SurfaceDiagnostics& d,
                                 bool with_da);

struct IdentityResiduals {
  double kinematic = 0.0;     // eta_t - (B - V eta')
  double dpsi_forms = 0.0;    // canonical minus reduced dpsi
  double bernoulli = 0.0;     // psi_t + V psi' + eta - V^2/2 - B^2/2
  double euler_v = 0.0;       // V_t + V V' + a eta'
  double taylor_cross = 0.0;  // (1 + B_t + V B') - a
};
// Relative L2 residuals; the first three are algebraic, the last two measure DN consistency.
IdentityResiduals identity_residuals(const DNOperator& dn, const SurfaceState& s, const CutoffTheta& th);

// u = (eta, |D|^{1/2} psi), U = (eta + T_alpha eta, |D|^{1/2} omega); V and alpha kept for C(u).
struct SymmetrizedState {
  Field u1, u2, U1, U2;
  Field V, alpha;
};

SymmetrizedState symmetrize(const SurfaceState& s, const SurfaceDiagnostics& d, const CutoffTheta& th);
SymmetrizedState symmetrize(const DNOperator& dn, const SurfaceState& s, const CutoffTheta& th);

enum class QSC { Q, S, C, D };

// Q and S from (u1, u2); C from V and alpha; D = (-|D|^{1/2} U2, |D|^{1/2} U1).
FieldPair qsc_apply(const SymmetrizedState& sym, QSC which, const FieldPair& U, const CutoffTheta& th);

// d/dt (U1, U2) along the flow, assembled from flow_derivatives.
FieldPair dt_symmetrized(const DNOperator& dn, const SurfaceState& s, const SurfaceDiagnostics& d,
                         const CutoffTheta& th);

// dU/dt + DU + Q(u)U + S(u)U + C(u)U; cubic in the amplitude.
FieldPair system_residual(const DNOperator& dn, const SurfaceState& s, const CutoffTheta& th);

}  // namespace wwlab
