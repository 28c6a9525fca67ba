#include "wwlab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace wwlab {

namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// FFTW planning is not thread safe; execution with new arrays is.
const PlanPair& plans_for(int m) {
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(m);
  if (it != cache.end()) return *it->second;
  auto p = std::make_unique<PlanPair>();
  std::vector<double> r(m);
  std::vector<fftw_complex> c(m / 2 + 1);
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  p->r2c = fftw_plan_dft_r2c_1d(m, r.data(), c.data(), flags);
  p->c2r = fftw_plan_dft_c2r_1d(m, c.data(), r.data(), flags | FFTW_DESTROY_INPUT);
  auto& ref = *p;
  cache.emplace(m, std::move(p));
  return ref;
}

// Forward transform of m samples on [-L/2, L/2) to the first `keep` coefficients.
void forward(const std::vector<double>& u, std::vector<cplx>& out, int keep) {
  int m = static_cast<int>(u.size());
  std::vector<cplx> hat(m / 2 + 1);
  std::vector<double> in(u);
  fftw_execute_dft_r2c(plans_for(m).r2c, in.data(), reinterpret_cast<fftw_complex*>(hat.data()));
  out.assign(keep, cplx(0.0, 0.0));
  double inv = 1.0 / m;
  for (int k = 0; k < keep && k <= m / 2; ++k) {
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    out[k] = hat[k] * (sign * inv);
  }
}

std::vector<double> inverse(const std::vector<cplx>& c, int band, int m) {
  std::vector<cplx> hat(m / 2 + 1, cplx(0.0, 0.0));
  for (int k = 0; k <= band && k < m / 2; ++k) {
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    hat[k] = c[k] * sign;
  }
  std::vector<double> out(m);
  fftw_execute_dft_c2r(plans_for(m).c2r, reinterpret_cast<fftw_complex*>(hat.data()), out.data());
  return out;
}

double bracket(double xi) { return std::sqrt(1.0 + xi * xi); }

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = std::exp(-1.0 / t);
  double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double smooth_step_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  double a = std::exp(-1.0 / t);
  double b = std::exp(-1.0 / (1.0 - t));
  double da = a / (t * t);
  double db = -b / ((1.0 - t) * (1.0 - t));
  return (da * (a + b) - a * (da + db)) / ((a + b) * (a + b));
}

Grid::Grid(int n_modes, double box_length) : n_(n_modes), length_(box_length) {
  if (n_modes < 16 || n_modes % 2 != 0)
    throw std::invalid_argument("grid: n_modes must be even and >= 16");
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw std::invalid_argument("grid: box_length must be positive");
}

double Grid::xi(int k) const { return 2.0 * std::numbers::pi * k / length_; }

double Grid::x(int j) const { return -0.5 * length_ + j * length_ / n_; }

std::vector<double> Grid::wavenumbers() const {
  std::vector<double> w(n_);
  for (int k = -n_ / 2; k < n_ / 2; ++k) w[k + n_ / 2] = xi(k);
  return w;
}

Field Field::from_samples(const Grid& g, const std::vector<double>& u) {
  if (static_cast<int>(u.size()) != g.n())
    throw std::invalid_argument("from_samples: size does not match grid");
  return from_fine_samples(g, u);
}

Field Field::from_function(const Grid& g, const std::function<double(double)>& f) {
  std::vector<double> u(g.n());
  for (int j = 0; j < g.n(); ++j) u[j] = f(g.x(j));
  return from_samples(g, u);
}

Field Field::from_fine_samples(const Grid& g, const std::vector<double>& u) {
  int m = static_cast<int>(u.size());
  if (m < g.n() || m % 2 != 0)
    throw std::invalid_argument("from_fine_samples: need an even sample count >= N");
  Field f(g);
  std::vector<cplx> tmp;
  forward(u, tmp, g.band() + 1);
  for (int k = 0; k <= g.band(); ++k) f.c[k] = tmp[k];
  f.c[0] = cplx(f.c[0].real(), 0.0);
  return f;
}

std::vector<double> Field::samples() const { return samples(grid.n()); }

std::vector<double> Field::samples(int m) const {
  if (m < grid.n() || m % 2 != 0) throw std::invalid_argument("samples: need even m >= N");
  return inverse(c, grid.band(), m);
}

cplx Field::operator[](int k) const {
  int a = std::abs(k);
  if (a > grid.band()) return cplx(0.0, 0.0);
  return k >= 0 ? c[a] : std::conj(c[a]);
}

Field& Field::operator+=(const Field& o) {
  require_same_grid(*this, o, "+");
  for (size_t k = 0; k < c.size(); ++k) c[k] += o.c[k];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_same_grid(*this, o, "-");
  for (size_t k = 0; k < c.size(); ++k) c[k] -= o.c[k];
  return *this;
}

Field& Field::operator*=(double s) {
  for (auto& v : c) v *= s;
  return *this;
}

double Field::eval(double x) const {
  double s = c[0].real();
  for (int k = 1; k <= grid.band(); ++k) {
    double ph = grid.xi(k) * x;
    s += 2.0 * (c[k].real() * std::cos(ph) - c[k].imag() * std::sin(ph));
  }
  return s;
}

bool Field::finite() const {
  for (const auto& v : c)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator-(Field a) { return a *= -1.0; }
Field operator*(double s, Field a) { return a *= s; }
Field operator*(Field a, double s) { return a *= s; }

void require_same_grid(const Field& a, const Field& b, const char* op) {
  if (a.grid != b.grid) throw std::invalid_argument(std::string("grid mismatch in ") + op);
}

Field apply_multiplier(const Field& u, const std::function<cplx(double)>& m) {
  const Grid& g = u.grid;
  Field out(g);
  double scale = 0.0;
  for (const auto& v : u.c) scale = std::max(scale, std::abs(v));
  cplx m0 = m(0.0);
  if (std::isfinite(m0.real()) && std::isfinite(m0.imag())) {
    out.c[0] = cplx((m0 * u.c[0]).real(), 0.0);
  } else if (std::abs(u.c[0]) > 1e-14 * scale) {
    throw std::domain_error("apply_multiplier: multiplier singular at xi = 0 on a field with nonzero mean");
  }
  for (int k = 1; k <= g.band(); ++k) {
    double xi = g.xi(k);
    cplx mp = m(xi);
    cplx mm = m(-xi);
    if (std::abs(mm - std::conj(mp)) > 1e-12 * (1.0 + std::abs(mp)))
      throw std::invalid_argument("apply_multiplier: m(-xi) != conj(m(xi)), output would not be real");
    if (!std::isfinite(mp.real()) || !std::isfinite(mp.imag()))
      throw std::domain_error("apply_multiplier: multiplier not finite on a retained wavenumber");
    out.c[k] = mp * u.c[k];
  }
  return out;
}

Field dx(const Field& u) {
  Field out(u.grid);
  for (int k = 1; k <= u.grid.band(); ++k) out.c[k] = cplx(0.0, u.grid.xi(k)) * u.c[k];
  return out;
}

Field abs_d(const Field& u, double s) {
  if (s == 1.0) {
    Field out(u.grid);
    for (int k = 1; k <= u.grid.band(); ++k) out.c[k] = u.grid.xi(k) * u.c[k];
    return out;
  }
  return apply_multiplier(u, [s](double xi) -> cplx {
    if (xi == 0.0) return s > 0.0 ? 0.0 : (s == 0.0 ? 1.0 : INFINITY);
    return std::pow(std::abs(xi), s);
  });
}

Field japanese(const Field& u, double s) {
  Field out(u.grid);
  for (int k = 0; k <= u.grid.band(); ++k) out.c[k] = std::pow(bracket(u.grid.xi(k)), s) * u.c[k];
  return out;
}

Field hilbert(const Field& u) {
  Field out(u.grid);
  for (int k = 1; k <= u.grid.band(); ++k) out.c[k] = cplx(0.0, 1.0) * u.c[k];
  return out;
}

Field exp_abs_d(const Field& u, double z) {
  Field out(u.grid);
  for (int k = 0; k <= u.grid.band(); ++k) out.c[k] = std::exp(z * u.grid.xi(k)) * u.c[k];
  return out;
}

Field band_truncate(const Field& u, double xi_cut) {
  Field out(u.grid);
  for (int k = 0; k <= u.grid.band(); ++k)
    if (u.grid.xi(k) <= xi_cut) out.c[k] = u.c[k];
  return out;
}

std::vector<double> fine(const Field& u) { return u.samples(2 * u.grid.n()); }

Field from_fine(const Grid& g, const std::vector<double>& v) { return Field::from_fine_samples(g, v); }

Field product(const Field& a, const Field& b) {
  require_same_grid(a, b, "product");
  auto fa = fine(a);
  auto fb = fine(b);
  for (size_t j = 0; j < fa.size(); ++j) fa[j] *= fb[j];
  return from_fine(a.grid, fa);
}

Field product(const Field& a, const Field& b, const Field& c) {
  require_same_grid(a, b, "product");
  require_same_grid(a, c, "product");
  auto fa = fine(a);
  auto fb = fine(b);
  auto fc = fine(c);
  for (size_t j = 0; j < fa.size(); ++j) fa[j] *= fb[j] * fc[j];
  return from_fine(a.grid, fa);
}

Field pointwise(const std::vector<const Field*>& args, const std::function<double(const double*)>& f) {
  if (args.empty()) throw std::invalid_argument("pointwise: no arguments");
  const Grid& g = args[0]->grid;
  std::vector<std::vector<double>> vals;
  vals.reserve(args.size());
  for (const Field* a : args) {
    if (a->grid != g) throw std::invalid_argument("grid mismatch in pointwise");
    vals.push_back(fine(*a));
  }
  int m = 2 * g.n();
  std::vector<double> out(m), buf(args.size());
  for (int j = 0; j < m; ++j) {
    for (size_t i = 0; i < args.size(); ++i) buf[i] = vals[i][j];
    out[j] = f(buf.data());
  }
  return from_fine(g, out);
}

double lp_low(double xi) { return 1.0 - smooth_step(2.0 * std::abs(xi) - 1.0); }

double lp_annulus(double xi) { return lp_low(0.5 * xi) - lp_low(xi); }

int lp_max_block(const Grid& g) {
  double top = g.xi_max();
  int j = 0;
  while (std::ldexp(1.0, j) < top) ++j;
  return j;
}

Field lp_block(const Field& u, int j) {
  if (j < -1) throw std::invalid_argument("lp_block: j must be >= -1");
  Field out(u.grid);
  for (int k = 0; k <= u.grid.band(); ++k) {
    double xi = u.grid.xi(k);
    double w = (j == -1) ? lp_low(xi) : lp_annulus(std::ldexp(xi, -j));
    out.c[k] = w * u.c[k];
  }
  return out;
}

double l2_norm(const Field& u) { return sobolev_norm(u, 0.0); }

double sobolev_norm(const Field& u, double s) {
  double acc = std::norm(u.c[0]);
  for (int k = 1; k <= u.grid.band(); ++k) acc += 2.0 * std::pow(bracket(u.grid.xi(k)), 2.0 * s) * std::norm(u.c[k]);
  return std::sqrt(u.grid.length() * acc);
}

double linf_norm(const Field& u) {
  double m = 0.0;
  for (double v : fine(u)) m = std::max(m, std::abs(v));
  return m;
}

double zygmund_norm(const Field& u, double s) {
  double low = linf_norm(lp_block(u, -1));
  double sup = 0.0;
  for (int j = 0; j <= lp_max_block(u.grid); ++j)
    sup = std::max(sup, std::pow(2.0, j * s) * linf_norm(lp_block(u, j)));
  return low + sup;
}

double norm(const Field& u, const NormIndex& idx) {
  return idx.kind == NormIndex::Kind::sobolev ? sobolev_norm(u, idx.order) : zygmund_norm(u, idx.order);
}

double inner(const Field& u, const Field& v, double s) {
  require_same_grid(u, v, "inner");
  double acc = (u.c[0] * std::conj(v.c[0])).real();
  for (int k = 1; k <= u.grid.band(); ++k)
    acc += 2.0 * std::pow(bracket(u.grid.xi(k)), 2.0 * s) * (u.c[k] * std::conj(v.c[k])).real();
  return u.grid.length() * acc;
}

double rel_l2(const Field& a, const Field& b, const Field& ref) {
  double r = l2_norm(ref);
  return l2_norm(a - b) / (r > 0.0 ? r : 1e-300);
}

}  // namespace wwlab
