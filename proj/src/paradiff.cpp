#include "wwlab/paradiff.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "wwlab/parallel.hpp"

namespace wwlab {

void CutoffTheta::validate() const {
  if (!(eps1 > 0.0)) throw std::invalid_argument("eps1 > 0 required");
  if (!(2.0 * eps1 < eps2)) throw std::invalid_argument("2*eps1 < eps2 required");
  if (!(eps2 < 0.5)) throw std::invalid_argument("eps2 < 1/2 required");
}

double CutoffTheta::f(double t) const {
  return 1.0 - smooth_step((std::abs(t) - 2.0 * eps1) / (eps2 - 2.0 * eps1));
}

double CutoffTheta::df(double t) const {
  double w = eps2 - 2.0 * eps1;
  double sgn = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
  return -smooth_step_derivative((std::abs(t) - 2.0 * eps1) / w) * sgn / w;
}

double CutoffTheta::chi(double xi) const { return 1.0 - smooth_step(std::abs(xi) - 1.0); }

double CutoffTheta::dchi(double xi) const {
  double sgn = xi > 0.0 ? 1.0 : (xi < 0.0 ? -1.0 : 0.0);
  return -smooth_step_derivative(std::abs(xi) - 1.0) * sgn;
}

double CutoffTheta::operator()(double xi1, double xi2) const {
  if (xi2 == 0.0) return 0.0;
  return (1.0 - chi(xi2)) * f(xi1 / xi2);
}

double CutoffTheta::euler(double xi1, double xi2) const {
  if (xi2 == 0.0) return 0.0;
  double t = xi1 / xi2;
  double d1 = (1.0 - chi(xi2)) * df(t) / xi2;
  double d2 = -dchi(xi2) * f(t) - (1.0 - chi(xi2)) * df(t) * xi1 / (xi2 * xi2);
  return xi1 * d1 + xi2 * d2;
}

std::shared_ptr<const ThetaTables> theta_tables(const Grid& g, const CutoffTheta& th) {
  using Key = std::tuple<int, double, double, double>;
  static std::mutex mtx;
  static std::map<Key, std::shared_ptr<const ThetaTables>> cache;
  Key key{g.n(), g.length(), th.eps1, th.eps2};
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<ThetaTables>();
  t->theta = tabulate(g, [&](double a, double b) { return cplx(th(a, b), 0.0); });
  t->zeta = tabulate(g, [&](double a, double b) { return cplx(th.zeta(a, b), 0.0); });
  t->s_symbol = tabulate(g, [&](double a, double b) { return cplx(-th.euler(a, b), 0.0); });
  if (cache.size() > 16) cache.clear();
  cache.emplace(key, t);
  return t;
}

namespace {

// Signed coefficient array s[k + h] = u[k], k in [-h, h).
std::vector<cplx> signed_coeffs(const Field& u) {
  int h = u.grid.n() / 2;
  std::vector<cplx> s(u.grid.n(), cplx(0.0, 0.0));
  for (int k = -u.grid.band(); k <= u.grid.band(); ++k) s[k + h] = u[k];
  return s;
}

}  // namespace

Field bilinear(const Field& a, const Field& b, const ScalarTable& m) {
  require_same_grid(a, b, "bilinear");
  if (m.grid != a.grid) throw std::invalid_argument("grid mismatch in bilinear symbol");
  const Grid& g = a.grid;
  int h = g.n() / 2, band = g.band();
  auto sa = signed_coeffs(a);
  auto sb = signed_coeffs(b);
  Field out(g);
  parallel_for(band + 1, [&](int k) {
    cplx acc(0.0, 0.0);
    int lo = std::max(-band, k - band), hi = std::min(band, k + band);
    for (int k1 = lo; k1 <= hi; ++k1) {
      int k2 = k - k1;
      acc += m(k1, k2) * sa[k1 + h] * sb[k2 + h];
    }
    out.c[k] = acc;
  });
  out.c[0] = cplx(out.c[0].real(), 0.0);
  return out;
}

Field paraproduct(const Field& a, const Field& b, const CutoffTheta& th) {
  return bilinear(a, b, theta_tables(a.grid, th)->theta);
}

Field remainder(const Field& a, const Field& b, const CutoffTheta& th) {
  return bilinear(a, b, theta_tables(a.grid, th)->zeta);
}

Field remainder_by_difference(const Field& a, const Field& b, const CutoffTheta& th) {
  return product(a, b) - paraproduct(a, b, th) - paraproduct(b, a, th);
}

Field s_bilinear(const Field& a, const Field& b, const CutoffTheta& th) {
  return bilinear(a, b, theta_tables(a.grid, th)->s_symbol);
}

Field paradifferential(const SymbolFn& a, const Field& u, const CutoffTheta& th) {
  const Grid& g = u.grid;
  int h = g.n() / 2, band = g.band();
  auto tab = theta_tables(g, th);
  auto su = signed_coeffs(u);
  // Symbol coefficients per eta-mode k2: sym[k2 + h][k1 + h].
  std::vector<std::vector<cplx>> sym(g.n());
  for (int k2 = -band; k2 <= band; ++k2) {
    bool needed = false;
    for (int k1 = -band; k1 <= band && !needed; ++k1) needed = tab->theta(k1, k2) != 0.0;
    if (!needed) continue;
    SymbolSample s = a(g.xi(k2));
    require_same_grid(s.re, u, "paradifferential");
    require_same_grid(s.im, u, "paradifferential");
    auto& row = sym[k2 + h];
    row.assign(g.n(), cplx(0.0, 0.0));
    for (int k1 = -band; k1 <= band; ++k1) row[k1 + h] = s.re[k1] + cplx(0.0, 1.0) * s.im[k1];
  }
  Field out(g);
  parallel_for(band + 1, [&](int k) {
    cplx acc(0.0, 0.0);
    int lo = std::max(-band, k - band), hi = std::min(band, k + band);
    for (int k2 = lo; k2 <= hi; ++k2) {
      const auto& row = sym[k2 + h];
      if (row.empty()) continue;
      int k1 = k - k2;
      acc += tab->theta(k1, k2) * row[k1 + h] * su[k2 + h];
    }
    out.c[k] = acc;
  });
  out.c[0] = cplx(out.c[0].real(), 0.0);
  return out;
}

Field paradifferential(const std::vector<SeparableTerm>& a, const Field& u, const CutoffTheta& th) {
  Field out(u.grid);
  for (const auto& term : a) out += paraproduct(term.coeff, apply_multiplier(u, term.multiplier), th);
  return out;
}

void BilinearSymbol::check() const {
  int band = grid.band();
  for (int k1 = -band; k1 <= band; ++k1)
    for (int k2 = -band; k2 <= band; ++k2) {
      const Mat2& m = (*this)(k1, k2);
      bool nonzero = false;
      for (const auto& e : m) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
          std::ostringstream os;
          os << "bilinear symbol: non-finite entry at (k1, k2) = (" << k1 << ", " << k2 << ")";
          throw std::domain_error(os.str());
        }
        nonzero = nonzero || e != 0.0;
      }
      if (!nonzero) continue;
      double x1 = std::abs(grid.xi(k1)), x2 = std::abs(grid.xi(k2)), xs = std::abs(grid.xi(k1 + k2));
      bool ok = true;
      if (tag == SupportTag::lowhigh) ok = x2 >= 1.0 && x1 <= support_constant * x2;
      if (tag == SupportTag::highhigh) ok = xs <= support_constant * (1.0 + std::min(x1, x2));
      if (!ok) {
        std::ostringstream os;
        os << "bilinear symbol: support tag violated at (k1, k2) = (" << k1 << ", " << k2 << ")";
        throw std::domain_error(os.str());
      }
    }
}

FieldPair operator+(const FieldPair& a, const FieldPair& b) { return {a.first + b.first, a.second + b.second}; }
FieldPair operator-(const FieldPair& a, const FieldPair& b) { return {a.first - b.first, a.second - b.second}; }
FieldPair operator*(double s, const FieldPair& a) { return {s * a.first, s * a.second}; }
double inner(const FieldPair& a, const FieldPair& b, double s) {
  return inner(a.first, b.first, s) + inner(a.second, b.second, s);
}
double l2_norm(const FieldPair& a) { return std::sqrt(inner(a, a, 0.0)); }
double sobolev_norm(const FieldPair& a, double s) { return std::sqrt(inner(a, a, s)); }

FieldPair op_bilinear(const Field& v, const BilinearSymbol& A, const FieldPair& f) {
  require_same_grid(v, f.first, "op_bilinear");
  require_same_grid(v, f.second, "op_bilinear");
  if (A.grid != v.grid) throw std::invalid_argument("grid mismatch in op_bilinear symbol");
  const Grid& g = v.grid;
  int h = g.n() / 2, band = g.band();
  auto sv = signed_coeffs(v);
  auto f1 = signed_coeffs(f.first);
  auto f2 = signed_coeffs(f.second);
  FieldPair out{Field(g), Field(g)};
  parallel_for(band + 1, [&](int k) {
    cplx o1(0.0, 0.0), o2(0.0, 0.0);
    int lo = std::max(-band, k - band), hi = std::min(band, k + band);
    for (int k1 = lo; k1 <= hi; ++k1) {
      int k2 = k - k1;
      const Mat2& m = A(k1, k2);
      cplx a = f1[k2 + h], b = f2[k2 + h], w = sv[k1 + h];
      o1 += w * (m[0] * a + m[1] * b);
      o2 += w * (m[2] * a + m[3] * b);
    }
    out.first.c[k] = o1;
    out.second.c[k] = o2;
  });
  out.first.c[0] = cplx(out.first.c[0].real(), 0.0);
  out.second.c[0] = cplx(out.second.c[0].real(), 0.0);
  return out;
}

FieldPair op_bilinear(const FieldPair& v, const BilinearSymbol& A1, const BilinearSymbol& A2, const FieldPair& f) {
  return op_bilinear(v.first, A1, f) + op_bilinear(v.second, A2, f);
}

BilinearSymbol adjoint_symbol(const BilinearSymbol& A) {
  const Grid& g = A.grid;
  BilinearSymbol B(g, SupportTag::general);
  int band = g.band();
  for (int k1 = -band; k1 <= band; ++k1)
    for (int k2 = -band; k2 <= band; ++k2) {
      int r1 = -k1, r2 = k1 + k2;
      if (std::abs(r2) > band) continue;
      const Mat2& m = A(r1, r2);
      B(k1, k2) = Mat2{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
    }
  return B;
}

BilinearSymbol operator+(const BilinearSymbol& a, const BilinearSymbol& b) {
  if (a.grid != b.grid) throw std::invalid_argument("grid mismatch in symbol sum");
  BilinearSymbol s(a.grid, a.tag == b.tag ? a.tag : SupportTag::general,
                   std::max(a.support_constant, b.support_constant));
  for (size_t i = 0; i < s.v.size(); ++i)
    for (int j = 0; j < 4; ++j) s.v[i][j] = a.v[i][j] + b.v[i][j];
  return s;
}

BilinearSymbol operator-(const BilinearSymbol& a, const BilinearSymbol& b) {
  if (a.grid != b.grid) throw std::invalid_argument("grid mismatch in symbol difference");
  BilinearSymbol s(a.grid, a.tag == b.tag ? a.tag : SupportTag::general,
                   std::max(a.support_constant, b.support_constant));
  for (size_t i = 0; i < s.v.size(); ++i)
    for (int j = 0; j < 4; ++j) s.v[i][j] = a.v[i][j] - b.v[i][j];
  return s;
}

BilinearSymbol scale(const BilinearSymbol& a, const ScalarTable& w) {
  if (a.grid != w.grid) throw std::invalid_argument("grid mismatch in symbol scaling");
  BilinearSymbol s(a.grid, a.tag, a.support_constant);
  for (size_t i = 0; i < s.v.size(); ++i)
    for (int j = 0; j < 4; ++j) s.v[i][j] = w.v[i] * a.v[i][j];
  return s;
}

}  // namespace wwlab
