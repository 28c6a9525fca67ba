#pragma once

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "wwlab/spectral.hpp"

namespace wwlab {

// Admissible paraproduct cutoff
//   theta(xi1, xi2) = (1 - chi(xi2)) * f(xi1 / xi2),
// f = 1 on |t| <= 2 eps1, f = 0 on |t| >= eps2; chi = 1 on |xi| <= 1, 0 on |xi| >= 2.
// Hence theta = 1 where |xi1| <= eps1|xi2| and |xi2| >= 2, theta = 0 where
// |xi1| >= eps2|xi2| or |xi2| <= 1.
struct CutoffTheta {
  double eps1 = 0.1;
  double eps2 = 0.4;

  void validate() const;
  double f(double t) const;
  double df(double t) const;
  double chi(double xi) const;
  double dchi(double xi) const;
  double operator()(double xi1, double xi2) const;
  // Euler derivative (xi1 d/dxi1 + xi2 d/dxi2) theta, from the closed-form profile.
  double euler(double xi1, double xi2) const;
  // zeta = 1 - theta(xi1, xi2) - theta(xi2, xi1).
  double zeta(double xi1, double xi2) const { return 1.0 - (*this)(xi1, xi2) - (*this)(xi2, xi1); }
};

// Scalar function of (xi1, xi2) tabulated on the signed mode lattice
// k1, k2 in [-N/2, N/2). Entries on the Nyquist row and column are unused.
struct ScalarTable {
  Grid grid;
  std::vector<cplx> v;
  ScalarTable() = default;
  explicit ScalarTable(const Grid& g) : grid(g), v(static_cast<size_t>(g.n()) * g.n(), cplx(0.0, 0.0)) {}
  size_t index(int k1, int k2) const {
    int h = grid.n() / 2;
    return static_cast<size_t>(k1 + h) * grid.n() + (k2 + h);
  }
  cplx& operator()(int k1, int k2) { return v[index(k1, k2)]; }
  cplx operator()(int k1, int k2) const { return v[index(k1, k2)]; }
};

template <class F>
ScalarTable tabulate(const Grid& g, F&& f) {
  ScalarTable t(g);
  int b = g.band();
  for (int k1 = -b; k1 <= b; ++k1)
    for (int k2 = -b; k2 <= b; ++k2) t(k1, k2) = f(g.xi(k1), g.xi(k2));
  return t;
}

// Cached lattice tables of theta, zeta and -xi.grad(theta) for a grid and cutoff.
struct ThetaTables {
  ScalarTable theta, zeta, s_symbol;
};
std::shared_ptr<const ThetaTables> theta_tables(const Grid& g, const CutoffTheta& th);

// Op^B with scalar symbol: sum over xi1 + xi2 = xi of m(xi1, xi2) a(xi1) b(xi2).
// The output keeps only the retained band. m must satisfy m(-xi1,-xi2) = conj(m)
// for a real result; only output modes xi >= 0 are computed.
Field bilinear(const Field& a, const Field& b, const ScalarTable& m);

Field paraproduct(const Field& a, const Field& b, const CutoffTheta& th);
Field remainder(const Field& a, const Field& b, const CutoffTheta& th);
Field remainder_by_difference(const Field& a, const Field& b, const CutoffTheta& th);
// S_B(a, b) with scalar symbol -(xi1 d1 + xi2 d2) theta.
Field s_bilinear(const Field& a, const Field& b, const CutoffTheta& th);

// (x, xi)-symbol a(x, xi) = re(x; xi) + i im(x; xi), sampled per retained xi.
struct SymbolSample {
  Field re, im;
};
using SymbolFn = std::function<SymbolSample(double xi)>;
// T_a u with hat(T_a u)(xi) = sum_eta theta(xi - eta, eta) hat(a)(xi - eta; eta) u(eta).
Field paradifferential(const SymbolFn& a, const Field& u, const CutoffTheta& th);

// Separable symbol sum_r c_r(x) m_r(xi): T_a u = sum_r T_{c_r} m_r(D) u.
struct SeparableTerm {
  Field coeff;
  std::function<cplx(double)> multiplier;
};
Field paradifferential(const std::vector<SeparableTerm>& a, const Field& u, const CutoffTheta& th);

using Mat2 = std::array<cplx, 4>;  // row major (11, 12, 21, 22)

enum class SupportTag { lowhigh, highhigh, general };

// 2x2-matrix symbol on the signed mode lattice.
struct BilinearSymbol {
  Grid grid;
  SupportTag tag = SupportTag::general;
  double support_constant = 0.0;  // c for lowhigh, C for highhigh
  std::vector<Mat2> v;

  BilinearSymbol() = default;
  explicit BilinearSymbol(const Grid& g, SupportTag t = SupportTag::general, double c = 0.0)
      : grid(g), tag(t), support_constant(c), v(static_cast<size_t>(g.n()) * g.n(), Mat2{}) {}
  size_t index(int k1, int k2) const {
    int h = grid.n() / 2;
    return static_cast<size_t>(k1 + h) * grid.n() + (k2 + h);
  }
  Mat2& operator()(int k1, int k2) { return v[index(k1, k2)]; }
  const Mat2& operator()(int k1, int k2) const { return v[index(k1, k2)]; }

  // Throws if an entry is NaN or the support tag is violated.
  void check() const;
};

template <class F>
BilinearSymbol tabulate_matrix(const Grid& g, SupportTag tag, double c, F&& f) {
  BilinearSymbol s(g, tag, c);
  int b = g.band();
  for (int k1 = -b; k1 <= b; ++k1)
    for (int k2 = -b; k2 <= b; ++k2)
      if (std::abs(k1 + k2) <= b) s(k1, k2) = f(g.xi(k1), g.xi(k2));
  return s;
}

using FieldPair = std::pair<Field, Field>;

FieldPair operator+(const FieldPair& a, const FieldPair& b);
FieldPair operator-(const FieldPair& a, const FieldPair& b);
FieldPair operator*(double s, const FieldPair& a);
double inner(const FieldPair& a, const FieldPair& b, double s = 0.0);
double l2_norm(const FieldPair& a);
double sobolev_norm(const FieldPair& a, double s);

// Op^B[v, A] f for a scalar v and a pair f.
FieldPair op_bilinear(const Field& v, const BilinearSymbol& A, const FieldPair& f);
// Op^B[v1, A1] f + Op^B[v2, A2] f.
FieldPair op_bilinear(const FieldPair& v, const BilinearSymbol& A1, const BilinearSymbol& A2,
                      const FieldPair& f);

// Symbol of the adjoint: conj(A^T(-xi1, xi1 + xi2)).
BilinearSymbol adjoint_symbol(const BilinearSymbol& A);
BilinearSymbol operator+(const BilinearSymbol& a, const BilinearSymbol& b);
BilinearSymbol operator-(const BilinearSymbol& a, const BilinearSymbol& b);
BilinearSymbol scale(const BilinearSymbol& a, const ScalarTable& w);

}  // namespace wwlab
