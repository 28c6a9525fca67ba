#include "wwlab/evolution.hpp"

namespace wwlab {

SymmetrizedState symmetrize(const SurfaceState& s, const SurfaceDiagnostics& d, const CutoffTheta& th) {
  SymmetrizedState y;
  y.u1 = s.eta;
  y.u2 = abs_d(s.psi, 0.5);
  y.U1 = s.eta + paraproduct(d.alpha, s.eta, th);
  y.U2 = abs_d(d.omega, 0.5);
  y.V = d.V;
  y.alpha = d.alpha;
  return y;
}

SymmetrizedState symmetrize(const DNOperator& dn, const SurfaceState& s, const CutoffTheta& th) {
  return symmetrize(s, traces(dn, s.eta, s.psi, th), th);
}

FieldPair qsc_apply(const SymmetrizedState& y, QSC which, const FieldPair& U, const CutoffTheta& th) {
  const Field& U1 = U.first;
  const Field& U2 = U.second;
  switch (which) {
    case QSC::D:
      return {-abs_d(U2, 0.5), abs_d(U1, 0.5)};
    case QSC::Q: {
      Field c = dx(abs_d(y.u2, -0.5));  // psi'
      Field e = -0.5 * abs_d(y.u1);
      Field h = abs_d(y.u2, 1.5);
      Field q1 = paraproduct(c, dx(U1), th) - 0.5 * paraproduct(h, U1, th) - paraproduct(e, abs_d(U2, 0.5), th);
      Field q2 = abs_d(paraproduct(c, dx(abs_d(U2, -0.5)), th) + paraproduct(e, U1, th), 0.5);
      return {q1, q2};
    }
    case QSC::S: {
      Field a = abs_d(y.u2, 0.5);             // |D| psi
      Field c = dx(abs_d(y.u2, -0.5));        // psi'
      Field w = dx(abs_d(U2, -0.5));
      Field s1 = abs_d(remainder(a, U1, th)) + dx(remainder(c, U1, th));
      Field s2 = abs_d(-0.5 * remainder(a, abs_d(U2, 0.5), th) + 0.5 * remainder(c, w, th), 0.5);
      return {s1, s2};
    }
    case QSC::C: {
      Field c = y.V - dx(abs_d(y.u2, -0.5));
      Field e = y.alpha + 0.5 * abs_d(y.u1);
      Field c1 = paraproduct(c, dx(U1), th) - paraproduct(e, abs_d(U2, 0.5), th);
      Field c2 = abs_d(paraproduct(c, dx(abs_d(U2, -0.5)), th) + paraproduct(e, U1, th), 0.5);
      return {c1, c2};
    }
  }
  throw std::invalid_argument("qsc_apply: unknown operator");
}

FieldPair dt_symmetrized(const DNOperator& dn, const SurfaceState& s, const SurfaceDiagnostics& d,
                         const CutoffTheta& th) {
  FlowDerivatives fd = flow_derivatives(dn, s, d, true);
  Field one_plus_alpha = d.alpha;
  one_plus_alpha.c[0] += 1.0;
  Field dalpha = pointwise({&fd.da, &one_plus_alpha}, [](const double* w) { return 0.5 * w[0] / w[1]; });
  Field du1 = fd.deta + paraproduct(dalpha, s.eta, th) + paraproduct(d.alpha, fd.deta, th);
  Field domega = fd.dpsi - paraproduct(fd.dB, s.eta, th) - paraproduct(d.B, fd.deta, th);
  return {du1, abs_d(domega, 0.5)};
}

FieldPair system_residual(const DNOperator& dn, const SurfaceState& s, const CutoffTheta& th) {
  SurfaceDiagnostics d = traces(dn, s.eta, s.psi, th);
  SymmetrizedState y = symmetrize(s, d, th);
  FieldPair U{y.U1, y.U2};
  FieldPair r = dt_symmetrized(dn, s, d, th);
  for (QSC w : {QSC::D, QSC::Q, QSC::S, QSC::C}) r = r + qsc_apply(y, w, U, th);
  return r;
}

}  // namespace wwlab
