#include "wwlab/normal_form.hpp"

#include <cmath>
#include <sstream>

namespace wwlab {

namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

bool is_zero(const Mat2& m) {
  for (const auto& e : m)
    if (e != 0.0) return false;
  return true;
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  return Mat2{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
              a[2] * b[1] + a[3] * b[3]};
}

Mat2 d_symbol(double xi) {
  double r = std::sqrt(std::abs(xi));
  return Mat2{0.0, -r, r, 0.0};
}

// Symbol tabulation with the xi1 = 0 and xi2 = 0 columns zeroed; v and f have zero mean.
template <class F>
BilinearSymbol make_symbol(const Grid& g, SupportTag tag, double c, F&& f) {
  return tabulate_matrix(g, tag, c,
                         [&](double x1, double x2) { return x1 == 0.0 || x2 == 0.0 ? Mat2{} : f(x1, x2); });
}

}  // namespace

SymbolPair operator+(const SymbolPair& a, const SymbolPair& b) { return {a.first + b.first, a.second + b.second}; }
SymbolPair operator-(const SymbolPair& a, const SymbolPair& b) { return {a.first - b.first, a.second - b.second}; }
SymbolPair adjoint(const SymbolPair& a) { return {adjoint_symbol(a.first), adjoint_symbol(a.second)}; }

FieldPair apply(const SymbolPair& E, const FieldPair& v, const FieldPair& f) {
  return op_bilinear(v, E.first, E.second, f);
}

double homological_delta(double xi1, double xi2) { return std::abs(xi1 + xi2) - std::abs(xi1) - std::abs(xi2); }

double homological_det(double xi1, double xi2) {
  double d = homological_delta(xi1, xi2);
  return d * d - 4.0 * std::abs(xi1) * std::abs(xi2);
}

SymbolPair solve_homological(const HomologicalInput& m) {
  const Grid& g = m.M1.grid;
  if (m.M2.grid != g) throw std::invalid_argument("solve_homological: grid mismatch");
  SymbolPair a{BilinearSymbol(g), BilinearSymbol(g)};
  int band = g.band();
  for (int k1 = -band; k1 <= band; ++k1)
    for (int k2 = -band; k2 <= band; ++k2) {
      if (std::abs(k1 + k2) > band) continue;
      const Mat2& M1 = m.M1(k1, k2);
      const Mat2& M2 = m.M2(k1, k2);
      if (is_zero(M1) && is_zero(M2)) continue;
      double x1 = g.xi(k1), x2 = g.xi(k2);
      double s = std::sqrt(std::abs(x1 + x2)), p = std::sqrt(std::abs(x1)), q = std::sqrt(std::abs(x2));
      double d = homological_delta(x1, x2), D = homological_det(x1, x2);
      if (s == 0.0 || std::abs(D) < 1e-9 * (x1 * x1 + x2 * x2)) {
        std::ostringstream os;
        os << "solve_homological: degenerate determinant on a supported pair (k1, k2) = (" << k1 << ", " << k2
           << ")";
        throw std::domain_error(os.str());
      }
      // Decoupled 4x4 systems; the second is the first after a sign change of selected unknowns.
      auto core = [&](cplx m121, cplx m211, cplx m112, cplx m222, cplx& a111, cplx& a221, cplx& a122,
                      cplx& a212) {
        cplx r1 = s * m211 - p * m121 + q * m222;
        cplx r2 = s * m112 + p * m222 - q * m121;
        a221 = d / D * r1 + 2.0 / D * p * q * r2;
        a122 = d / D * r2 + 2.0 / D * p * q * r1;
        a212 = -(p * a122 + q * a221 + m222) / s;
        a111 = (p * a221 + q * a122 - m121) / s;
      };
      Mat2& A1 = a.first(k1, k2);
      Mat2& A2 = a.second(k1, k2);
      core(M1[2], M2[0], M1[1], M2[3], A1[0], A2[2], A1[3], A2[1]);
      cplx e0, e1, e2, e3;
      core(-M2[2], M1[0], -M2[1], M1[3], e0, e1, e2, e3);
      A2[0] = -e0;
      A1[2] = e1;
      A1[1] = e3;
      A2[3] = -e2;
    }
  return a;
}

double homological_symbol_residual(const SymbolPair& a, const HomologicalInput& m) {
  const Grid& g = m.M1.grid;
  int band = g.band();
  double res = 0.0, scale = 0.0;
  for (int k1 = -band; k1 <= band; ++k1)
    for (int k2 = -band; k2 <= band; ++k2) {
      if (std::abs(k1 + k2) > band) continue;
      double x1 = g.xi(k1), x2 = g.xi(k2);
      Mat2 ds = d_symbol(x1 + x2), d2 = d_symbol(x2);
      double p = std::sqrt(std::abs(x1));
      const Mat2& A1 = a.first(k1, k2);
      const Mat2& A2 = a.second(k1, k2);
      Mat2 l1 = mat_mul(ds, A1), r1 = mat_mul(A1, d2), l2 = mat_mul(ds, A2), r2 = mat_mul(A2, d2);
      for (int i = 0; i < 4; ++i) {
        res = std::max(res, std::abs(-l1[i] + r1[i] + p * A2[i] - m.M1(k1, k2)[i]));
        res = std::max(res, std::abs(-l2[i] + r2[i] - p * A1[i] - m.M2(k1, k2)[i]));
        scale = std::max({scale, std::abs(m.M1(k1, k2)[i]), std::abs(m.M2(k1, k2)[i])});
      }
    }
  return scale > 0.0 ? res / scale : res;
}

SharpFlat build_e_sharp_flat(const Grid& g, const CutoffTheta& th) {
  const double C = 1.0 + 1.0 / th.eps1;
  const SupportTag hh = SupportTag::highhigh;
  auto zeta = [&](double x1, double x2) { return th.zeta(x1, x2); };
  SharpFlat out;
  auto sharp_factor = [&](double x1, double x2) { return (1.0 - sgn(x1 + x2) * sgn(x1)) * zeta(x1, x2); };
  auto flat_factor = [&](double x1, double x2) { return (sgn(x1) + sgn(x2)) * zeta(x1, x2); };
  out.r_sharp.first = make_symbol(g, hh, C, [&](double x1, double x2) {
    double f = -0.5 * sharp_factor(x1, x2);
    return Mat2{f * std::abs(x1 + x2), 0.0, 0.0, f * std::sqrt(std::abs(x2) * std::abs(x1 + x2))};
  });
  out.r_sharp.second = make_symbol(g, hh, C, [&](double x1, double x2) {
    double f = 0.5 * sharp_factor(x1, x2);
    return Mat2{0.0, 0.0, f * std::sqrt(std::abs(x1) * std::abs(x1 + x2)), 0.0};
  });
  out.m_sharp.first = BilinearSymbol(g, hh, C);
  // |xi1|^{-1/2}(|xi1+xi2||xi1| - (xi1+xi2) xi1) written without the removable singularity.
  out.m_sharp.second = make_symbol(g, hh, C, [&](double x1, double x2) {
    double m = std::sqrt(std::abs(x1)) * (std::abs(x1 + x2) - sgn(x1) * (x1 + x2)) * zeta(x1, x2);
    return Mat2{m, 0.0, 0.0, 0.0};
  });
  out.r_flat.first = make_symbol(g, hh, C, [&](double x1, double x2) {
    double f = 0.25 * flat_factor(x1, x2);
    return Mat2{f * (x1 + x2), 0.0, 0.0, f * std::sqrt(std::abs(x1 + x2) * std::abs(x2)) * sgn(x1 + x2)};
  });
  out.r_flat.second = make_symbol(g, hh, C, [&](double x1, double x2) {
    double f = 0.25 * flat_factor(x1, x2);
    return Mat2{0.0, 0.0, f * std::sqrt(std::abs(x1 + x2) * std::abs(x1)) * sgn(x1 + x2), 0.0};
  });
  out.m_flat.first = BilinearSymbol(g, hh, C);
  out.m_flat.second = make_symbol(g, hh, C, [&](double x1, double x2) {
    double m = -0.5 * std::sqrt(std::abs(x1 + x2) * std::abs(x1) * std::abs(x2)) * flat_factor(x1, x2) *
               sgn(x1 + x2);
    return Mat2{0.0, 0.0, 0.0, m};
  });
  return out;
}

namespace {

FieldPair d_apply(const FieldPair& v) { return {-abs_d(v.second, 0.5), abs_d(v.first, 0.5)}; }

}  // namespace

double homological_check(const SymbolPair& e, const SymbolPair& pi, const FieldPair& v, const FieldPair& f) {
  FieldPair lhs = apply(e, d_apply(v), f) + apply(e, v, d_apply(f)) - d_apply(apply(e, v, f));
  FieldPair rhs = apply(pi, v, f);
  double n = l2_norm(rhs);
  double r = l2_norm(lhs - rhs);
  return n > 0.0 ? r / n : r;
}

SymbolPair q_symbols(const Grid& g, const CutoffTheta& th) {
  auto tab = theta_tables(g, th);
  SymbolPair q;
  q.first = BilinearSymbol(g, SupportTag::lowhigh, th.eps2);
  q.second = BilinearSymbol(g, SupportTag::lowhigh, th.eps2);
  int band = g.band();
  for (int k1 = -band; k1 <= band; ++k1)
    for (int k2 = -band; k2 <= band; ++k2) {
      if (std::abs(k1 + k2) > band || k1 == 0) continue;
      double t = tab->theta(k1, k2).real();
      if (t == 0.0) continue;
      double x1 = g.xi(k1), x2 = g.xi(k2);
      double rs = std::sqrt(std::abs(x1 + x2)), r2 = std::sqrt(std::abs(x2)), r1 = std::sqrt(std::abs(x1));
      double h = 0.5 * std::abs(x1) * t;
      q.first(k1, k2) = Mat2{0.0, h * r2, -h * rs, 0.0};
      double c = sgn(x1) * r1 * t;
      q.second(k1, k2) = Mat2{c * (-x2 - 0.5 * x1), 0.0, 0.0, -c * rs * sgn(x2) * r2};
    }
  return q;
}

double bracket_weight(const Grid& g, int k, double s) {
  double x = g.xi(k);
  return std::pow(1.0 + x * x, s);
}

ScalarTable weight_table(const Grid& g, double beta) {
  ScalarTable w(g);
  int band = g.band();
  for (int k1 = -band; k1 <= band; ++k1)
    for (int k2 = -band; k2 <= band; ++k2) {
      double a = bracket_weight(g, k1 + k2, beta), b = bracket_weight(g, k2, beta);
      w(k1, k2) = a / (a + b);
    }
  return w;
}

SymbolPair build_b_of_v(const Grid& g, double s, const CutoffTheta& th) {
  SymbolPair q = q_symbols(g, th);
  SymbolPair qa = adjoint(q);
  SymbolPair b{BilinearSymbol(g), BilinearSymbol(g)};
  int band = g.band();
  for (int k1 = -band; k1 <= band; ++k1)
    for (int k2 = -band; k2 <= band; ++k2) {
      if (std::abs(k1 + k2) > band) continue;
      double wo = bracket_weight(g, k1 + k2, s), wi = bracket_weight(g, k2, s);
      for (int i = 0; i < 4; ++i) {
        b.first(k1, k2)[i] = (wo * q.first(k1, k2)[i] + wi * qa.first(k1, k2)[i]) / (wo + wi);
        b.second(k1, k2)[i] = (wo * q.second(k1, k2)[i] + wi * qa.second(k1, k2)[i]) / (wo + wi);
      }
    }
  return b;
}

namespace {

SymbolPair weighted(const SymbolPair& r, const ScalarTable& w) {
  SymbolPair wr{scale(r.first, w), scale(r.second, w)};
  return wr + adjoint(wr);
}

}  // namespace

WeightedCorrectors build_weighted(const Grid& g, double beta, const CutoffTheta& th) {
  if (!(beta >= 0.0)) throw std::invalid_argument("build_weighted: beta >= 0 required");
  SharpFlat sf = build_e_sharp_flat(g, th);
  ScalarTable w = weight_table(g, beta);
  return {weighted(sf.r_sharp, w), weighted(sf.r_flat, w), weighted(sf.m_sharp, w), weighted(sf.m_flat, w)};
}

NormalFormKit build_kit(const Grid& g, double s_index, const CutoffTheta& th) {
  NormalFormKit kit;
  kit.s_index = s_index;
  kit.BA = build_b_of_v(g, s_index, th);
  HomologicalInput m{BilinearSymbol(g), BilinearSymbol(g)};
  for (size_t i = 0; i < m.M1.v.size(); ++i)
    for (int j = 0; j < 4; ++j) {
      m.M1.v[i][j] = -kit.BA.first.v[i][j];
      m.M2.v[i][j] = -kit.BA.second.v[i][j];
    }
  kit.EA = solve_homological(m);
  WeightedCorrectors wc = build_weighted(g, s_index, th);
  kit.ER = wc.e_sharp + wc.e_flat;
  kit.frak_S = wc.frak_sharp + wc.frak_flat;
  SharpFlat sf = build_e_sharp_flat(g, th);
  kit.S = sf.m_sharp + sf.m_flat;
  return kit;
}

FieldPair phi_transform(const SymmetrizedState& y, const NormalFormKit& kit) {
  FieldPair u{y.u1, y.u2}, U{y.U1, y.U2};
  return U + apply(kit.EA, u, U) - apply(kit.ER, u, U);
}

}  // namespace wwlab
