#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wwlab {

using cplx = std::complex<double>;

// Smooth monotone transition: 0 for t <= 0, 1 for t >= 1, C-infinity in between.
double smooth_step(double t);
double smooth_step_derivative(double t);

// Periodic grid on [-L/2, L/2) with N collocation points.
// Retained band is |k| <= N/2 - 1; the Nyquist mode is always zero.
class Grid {
 public:
  Grid() = default;
  Grid(int n_modes, double box_length);

  int n() const { return n_; }
  double length() const { return length_; }
  int band() const { return n_ / 2 - 1; }
  double xi(int k) const;
  double x(int j) const;
  double xi_min() const { return xi(1); }
  double xi_max() const { return xi(band()); }
  std::vector<double> wavenumbers() const;

  bool operator==(const Grid& o) const { return n_ == o.n_ && length_ == o.length_; }
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  int n_ = 0;
  double length_ = 0.0;
};

// Real periodic field stored as the half spectrum c[k], k = 0..N/2.
// Convention: u(x) = sum_k c_k e^{i xi_k x}, c_{-k} = conj(c_k), c[N/2] = 0.
struct Field {
  Grid grid;
  std::vector<cplx> c;

  Field() = default;
  explicit Field(const Grid& g) : grid(g), c(g.n() / 2 + 1, cplx(0.0, 0.0)) {}

  static Field from_samples(const Grid& g, const std::vector<double>& u);
  static Field from_function(const Grid& g, const std::function<double(double)>& f);

  std::vector<double> samples() const;
  // Values on an m-point grid (m even, m >= N) over the same box.
  std::vector<double> samples(int m) const;
  // Truncating projection of m-point samples to this grid's band.
  static Field from_fine_samples(const Grid& g, const std::vector<double>& u);

  // Coefficient of signed mode k; zero outside the band.
  cplx operator[](int k) const;
  double mean() const { return c[0].real(); }

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double s);
  // Evaluate the trigonometric interpolant at an arbitrary x.
  double eval(double x) const;
  bool finite() const;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator-(Field a);
Field operator*(double s, Field a);
Field operator*(Field a, double s);

void require_same_grid(const Field& a, const Field& b, const char* op);

// Fourier multiplier m(xi). m is evaluated for xi >= 0 and extended by
// conj-symmetry; a multiplier violating m(-xi) = conj(m(xi)) is rejected.
// A non-finite m(0) is accepted only when the zero mode of u vanishes.
Field apply_multiplier(const Field& u, const std::function<cplx(double)>& m);

Field dx(const Field& u);
Field abs_d(const Field& u, double s = 1.0);    // |D|^s, zero mode dropped for s < 0
Field japanese(const Field& u, double s);       // <D>^s
Field hilbert(const Field& u);                  // multiplier i xi / |xi|
Field exp_abs_d(const Field& u, double z);      // e^{z |D|}
Field band_truncate(const Field& u, double xi_cut);

// Alias-free products: operands are evaluated on the 2N grid and the result
// is truncated to the band. Exact for quadratic and cubic polynomial terms.
Field product(const Field& a, const Field& b);
Field product(const Field& a, const Field& b, const Field& c);
// Pointwise nonlinear map evaluated on the 2N grid, truncated to the band.
Field pointwise(const std::vector<const Field*>& args,
                const std::function<double(const double*)>& f);

// Zero-padded physical values on the 2N grid and the truncating inverse.
std::vector<double> fine(const Field& u);
Field from_fine(const Grid& g, const std::vector<double>& v);

// Littlewood-Paley profile: Phi = 1 on |xi| <= 1/2, 0 on |xi| >= 1.
double lp_low(double xi);
double lp_annulus(double xi);  // phi(xi) = Phi(xi/2) - Phi(xi)
int lp_max_block(const Grid& g);
// j = -1 is the low block S_0; j >= 0 is Delta_j.
Field lp_block(const Field& u, int j);

struct NormIndex {
  enum class Kind { sobolev, zygmund };
  Kind kind = Kind::sobolev;
  double order = 0.0;
};

double sobolev_norm(const Field& u, double s);
double zygmund_norm(const Field& u, double s);
double norm(const Field& u, const NormIndex& idx);
double l2_norm(const Field& u);
double linf_norm(const Field& u);  // max over the 2N grid
// Real H^s inner product, L * sum <xi>^{2s} Re(u_k conj(v_k)).
double inner(const Field& u, const Field& v, double s = 0.0);

// Relative L2 distance |a-b| / max(|ref|, tiny).
double rel_l2(const Field& a, const Field& b, const Field& ref);

}  // namespace wwlab
