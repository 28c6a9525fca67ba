#include <cmath>
#include <sstream>

#include "wwlab/dirichlet_neumann.hpp"
#include "wwlab/parallel.hpp"

namespace wwlab {

namespace {

constexpr int kStencil = 4;

// I_p = int_0^h t^p e^{-k t} dt for p < 4.
void kernel_moments(double k, double h, double* I) {
  double x = k * h;
  if (x < 1.0) {
    for (int m = 0; m < kStencil; ++m) {
      double s = 0.0, term = 1.0;
      for (int n = 0; n < 30; ++n) {
        s += term / (m + n + 1);
        term *= -x / (n + 1);
      }
      I[m] = s * std::pow(h, m + 1);
    }
  } else {
    double e = std::exp(-x);
    I[0] = -std::expm1(-x) / k;
    for (int m = 1; m < kStencil; ++m) I[m] = (m * I[m - 1] - std::pow(h, m) * e) / k;
  }
}

// Monomial coefficients of the Lagrange basis on nodes t: basis[m][p].
void lagrange_basis(const double* t, double basis[kStencil][kStencil]) {
  for (int m = 0; m < kStencil; ++m) {
    double poly[kStencil] = {1.0, 0.0, 0.0, 0.0};
    double denom = 1.0;
    int deg = 0;
    for (int n = 0; n < kStencil; ++n) {
      if (n == m) continue;
      for (int p = deg + 1; p > 0; --p) poly[p] = poly[p - 1] - t[n] * poly[p];
      poly[0] = -t[n] * poly[0];
      ++deg;
      denom *= t[m] - t[n];
    }
    for (int p = 0; p < kStencil; ++p) basis[m][p] = poly[p] / denom;
  }
}

using Plane = std::vector<cplx>;  // [node * nk + k]

}  // namespace

FixedPointDN::FixedPointDN(const Grid& g, DNParams p) : grid_(g), params_(p), z_(p.z_nodes(g)) { precompute(); }

FixedPointDN::FixedPointDN(const Grid& g, const std::vector<double>& z, DNParams p)
    : grid_(g), params_(p), z_(z) {
  params_.n_z = static_cast<int>(z.size());
  precompute();
}

void FixedPointDN::precompute() {
  int nz = static_cast<int>(z_.size());
  if (nz < kStencil) throw std::invalid_argument("fixed point: need at least 4 z-nodes");
  if (z_[0] != 0.0) throw std::invalid_argument("fixed point: first z-node must be 0");
  for (int i = 1; i < nz; ++i)
    if (!(z_[i] < z_[i - 1])) throw std::invalid_argument("fixed point: z-nodes must be strictly decreasing");
  nk_ = grid_.band() + 1;
  int ni = nz - 1;
  stencil_lo_.resize(ni);
  w_down_.assign(static_cast<size_t>(ni) * kStencil * nk_, 0.0);
  w_up_.assign(static_cast<size_t>(ni) * kStencil * nk_, 0.0);
  decay_.assign(static_cast<size_t>(ni) * nk_, 0.0);
  growth_.assign(static_cast<size_t>(nz) * nk_, 0.0);
  for (int i = 0; i < nz; ++i)
    for (int k = 0; k < nk_; ++k) growth_[static_cast<size_t>(i) * nk_ + k] = std::exp(z_[i] * grid_.xi(k));
  for (int j = 0; j < ni; ++j) {
    int lo = std::max(0, std::min(j - 1, nz - kStencil));
    stencil_lo_[j] = lo;
    double h = z_[j] - z_[j + 1];
    double td[kStencil], tu[kStencil], bd[kStencil][kStencil], bu[kStencil][kStencil];
    for (int m = 0; m < kStencil; ++m) {
      td[m] = z_[j] - z_[lo + m];
      tu[m] = z_[lo + m] - z_[j + 1];
    }
    lagrange_basis(td, bd);
    lagrange_basis(tu, bu);
    for (int k = 0; k < nk_; ++k) {
      double xi = grid_.xi(k);
      double I[kStencil];
      kernel_moments(xi, h, I);
      decay_[static_cast<size_t>(j) * nk_ + k] = std::exp(-xi * h);
      for (int m = 0; m < kStencil; ++m) {
        double sd = 0.0, su = 0.0;
        for (int p = 0; p < kStencil; ++p) {
          sd += bd[m][p] * I[p];
          su += bu[m][p] * I[p];
        }
        w_down_[(static_cast<size_t>(j) * kStencil + m) * nk_ + k] = sd;
        w_up_[(static_cast<size_t>(j) * kStencil + m) * nk_ + k] = su;
      }
    }
  }
}

StripField FixedPointDN::harmonic_extension(const Field& eta, const Field& psi) const {
  require_same_grid(eta, psi, "harmonic_extension");
  if (eta.grid != grid_) throw std::invalid_argument("harmonic_extension: grid does not match solver");
  const int nz = static_cast<int>(z_.size());
  const int nk = nk_;
  const size_t plane = static_cast<size_t>(nz) * nk;
  const cplx I1(0.0, 1.0);

  Plane u0(plane), w0(plane);
  for (int i = 0; i < nz; ++i)
    for (int k = 1; k < nk; ++k) {
      double xi = grid_.xi(k), e = growth_[static_cast<size_t>(i) * nk + k];
      u0[static_cast<size_t>(i) * nk + k] = e * I1 * xi * psi.c[k];
      w0[static_cast<size_t>(i) * nk + k] = e * xi * psi.c[k];
    }

  auto node_norm = [&](const Plane& a, const Plane& b, int i) {
    double acc = 0.0;
    for (int k = 0; k < nk; ++k) {
      double wgt = k == 0 ? 1.0 : 2.0;
      acc += wgt * (std::norm(a[static_cast<size_t>(i) * nk + k]) + std::norm(b[static_cast<size_t>(i) * nk + k]));
    }
    return std::sqrt(grid_.length() * acc);
  };

  StripField out;
  out.grid = grid_;
  out.z = z_;
  Plane u = u0, w = w0;
  double scale = node_norm(u0, w0, 0);

  auto eta_p = fine(dx(eta));
  double slope_inf = 0.0;
  for (double v : eta_p) slope_inf = std::max(slope_inf, std::abs(v));

  if (scale > 0.0) {
    Plane g1(plane), g2(plane), loc(plane), lw1(plane), up1(plane), lw2(plane), up2(plane);
    auto lower = [&](const Plane& g, Plane& r) {
      for (int k = 0; k < nk; ++k) r[static_cast<size_t>(nz - 1) * nk + k] = 0.0;
      for (int i = nz - 2; i >= 0; --i) {
        int lo = stencil_lo_[i];
        for (int k = 0; k < nk; ++k) {
          cplx acc = decay_[static_cast<size_t>(i) * nk + k] * r[static_cast<size_t>(i + 1) * nk + k];
          for (int m = 0; m < kStencil; ++m)
            acc += w_down_[(static_cast<size_t>(i) * kStencil + m) * nk + k] * g[static_cast<size_t>(lo + m) * nk + k];
          r[static_cast<size_t>(i) * nk + k] = acc;
        }
      }
    };
    auto upper = [&](const Plane& g, Plane& r) {
      for (int k = 0; k < nk; ++k) r[k] = 0.0;
      for (int i = 1; i < nz; ++i) {
        int lo = stencil_lo_[i - 1];
        for (int k = 0; k < nk; ++k) {
          cplx acc = decay_[static_cast<size_t>(i - 1) * nk + k] * r[static_cast<size_t>(i - 1) * nk + k];
          for (int m = 0; m < kStencil; ++m)
            acc += w_up_[(static_cast<size_t>(i - 1) * kStencil + m) * nk + k] * g[static_cast<size_t>(lo + m) * nk + k];
          r[static_cast<size_t>(i) * nk + k] = acc;
        }
      }
    };

    double prev = INFINITY, omega = 1.0;
    int increases = 0;
    bool converged = false;
    int it = 0;
    for (; it < params_.max_iter; ++it) {
      parallel_for(nz, [&](int i) {
        Field fu(grid_), fw(grid_);
        for (int k = 0; k < nk; ++k) {
          fu.c[k] = u[static_cast<size_t>(i) * nk + k];
          fw.c[k] = w[static_cast<size_t>(i) * nk + k];
        }
        auto pu = fine(fu);
        auto pw = fine(fw);
        std::vector<double> p1(pu.size()), p2(pu.size());
        for (size_t j = 0; j < pu.size(); ++j) {
          double e = eta_p[j];
          p1[j] = e * pw[j];
          p2[j] = -e * pu[j] + e * e * pw[j];
        }
        Field f1 = from_fine(grid_, p1), f2 = from_fine(grid_, p2);
        for (int k = 0; k < nk; ++k) {
          size_t idx = static_cast<size_t>(i) * nk + k;
          g1[idx] = k == 0 ? cplx(0.0, 0.0) : I1 * f1.c[k];
          g2[idx] = f2.c[k];
          loc[idx] = -f2.c[k];
        }
      });
      Plane s(plane);
      for (size_t q = 0; q < plane; ++q) s[q] = g1[q] + g2[q];
      Plane ls(plane);
      lower(s, ls);
      lower(g1, lw1);
      upper(g1, up1);
      lower(g2, lw2);
      upper(g2, up2);
      Plane un(plane), wn(plane);
      for (int i = 0; i < nz; ++i)
        for (int k = 0; k < nk; ++k) {
          size_t idx = static_cast<size_t>(i) * nk + k;
          double xi = grid_.xi(k), e = growth_[idx];
          cplx c0 = ls[k];
          un[idx] = u0[idx] + 0.5 * e * I1 * xi * c0 + 0.5 * I1 * xi * (-(lw1[idx] + up1[idx]) - (lw2[idx] - up2[idx]));
          wn[idx] = w0[idx] + 0.5 * e * xi * c0 + 0.5 * xi * ((lw1[idx] - up1[idx]) + (lw2[idx] + up2[idx])) + loc[idx];
        }
      Plane du(plane), dw(plane);
      for (size_t q = 0; q < plane; ++q) {
        du[q] = un[q] - u[q];
        dw[q] = wn[q] - w[q];
      }
      double res = 0.0;
      for (int i = 0; i < nz; ++i) res = std::max(res, node_norm(du, dw, i));
      res /= scale;
      if (!std::isfinite(res)) throw NumericalError("harmonic_extension", "non-finite iterate");
      if (res > prev) {
        ++increases;
        if (params_.relax) omega = 0.8;
        if (increases >= 3) {
          std::ostringstream os;
          os << "fixed point not contracting (residual grew over 3 sweeps), |eta'|_inf = " << slope_inf;
          throw NumericalError("harmonic_extension", os.str());
        }
      } else {
        increases = 0;
      }
      prev = res;
      for (size_t q = 0; q < plane; ++q) {
        u[q] += omega * du[q];
        w[q] += omega * dw[q];
      }
      out.residual = res;
      if (res < params_.tol) {
        converged = true;
        ++it;
        break;
      }
    }
    out.iterations = it;
    if (!converged) {
      std::ostringstream os;
      os << "max_iter exhausted, final residual " << out.residual;
      throw NumericalError("harmonic_extension", os.str());
    }
  }

  out.dx_phi.assign(nz, Field(grid_));
  out.dz_phi.assign(nz, Field(grid_));
  for (int i = 0; i < nz; ++i)
    for (int k = 0; k < nk; ++k) {
      out.dx_phi[i].c[k] = u[static_cast<size_t>(i) * nk + k];
      out.dz_phi[i].c[k] = w[static_cast<size_t>(i) * nk + k];
    }
  for (int i = 0; i < nz; ++i) {
    out.dx_phi[i].c[0] = cplx(out.dx_phi[i].c[0].real(), 0.0);
    out.dz_phi[i].c[0] = cplx(out.dz_phi[i].c[0].real(), 0.0);
  }
  return out;
}

Field FixedPointDN::apply(const Field& eta, const Field& psi) const {
  StripField s = harmonic_extension(eta, psi);
  Field ep = dx(eta);
  return pointwise({&ep, &s.dx_phi[0], &s.dz_phi[0]},
                   [](const double* v) { return (1.0 + v[0] * v[0]) * v[2] - v[0] * v[1]; });
}

}  // namespace wwlab
