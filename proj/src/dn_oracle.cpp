#include <Eigen/Dense>
#include <cmath>

#include "wwlab/dirichlet_neumann.hpp"

namespace wwlab {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

Vec to_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

// Collocation matrix of a Fourier multiplier on the N-point grid (band-limited, Nyquist dropped).
Mat collocation_matrix(const Grid& g, Field (*op)(const Field&)) {
  int n = g.n();
  Mat m(n, n);
  std::vector<double> e(n, 0.0);
  for (int j = 0; j < n; ++j) {
    e.assign(n, 0.0);
    e[j] = 1.0;
    auto col = op(Field::from_samples(g, e)).samples();
    for (int i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

Field second_derivative(const Field& u) { return dx(dx(u)); }
Field first_derivative(const Field& u) { return dx(u); }

}  // namespace

Field dn_oracle(const Field& eta, const Field& psi, const std::vector<double>& z, OracleForm form) {
  require_same_grid(eta, psi, "dn_oracle");
  const Grid& g = eta.grid;
  const int n = g.n();
  const int nz = static_cast<int>(z.size());
  if (nz < 4 || z[0] != 0.0) throw std::invalid_argument("dn_oracle: need >= 4 z-nodes starting at 0");

  auto ep = dx(eta).samples();
  auto epp = dx(dx(eta)).samples();
  Vec a(n), b(n), c(n);
  for (int j = 0; j < n; ++j) {
    double q = 1.0 / (1.0 + ep[j] * ep[j]);
    a(j) = q;
    b(j) = -2.0 * q * ep[j];
    c(j) = q * epp[j];
  }
  Mat dxm = collocation_matrix(g, first_derivative);
  Mat dxxm = collocation_matrix(g, second_derivative);
  Mat A = a.asDiagonal() * dxxm;
  Mat BC = b.asDiagonal() * dxm;
  BC.diagonal() -= c;  // b d_x - c, multiplying d_z
  Mat I = Mat::Identity(n, n);

  // Row r couples node i = r + 1 to nodes i - 1 (up) and i + 1 (down).
  struct Row {
    Mat up, diag, down;
  };
  auto row = [&](int i) {
    Row R;
    if (i < nz - 1) {
      double h1 = z[i - 1] - z[i], h2 = z[i] - z[i + 1];
      double cu = 2.0 / (h1 * (h1 + h2)), cd = 2.0 / (h2 * (h1 + h2)), cc = -2.0 / (h1 * h2);
      double du = h2 / (h1 * (h1 + h2)), dd = -h1 / (h2 * (h1 + h2)), dc = (h1 - h2) / (h1 * h2);
      R.up = cu * I + du * BC;
      R.diag = cc * I + A + dc * BC;
      R.down = cd * I + dd * BC;
    } else {
      // Neumann bottom through a symmetric ghost node.
      double h1 = z[i - 1] - z[i];
      R.up = (2.0 / (h1 * h1)) * I;
      R.diag = (-2.0 / (h1 * h1)) * I + A;
    }
    return R;
  };

  const int rows = nz - 1;
  std::vector<Vec> rhs(rows, Vec::Zero(n));
  if (form == OracleForm::direct) {
    rhs[0] -= row(1).up * to_vec(psi.samples());
  } else {
    for (int r = 0; r < rows; ++r) {
      double zz = z[r + 1];
      Field e = exp_abs_d(psi, zz);
      auto pxx = dx(dx(e)).samples();
      auto pxz = dx(abs_d(e)).samples();
      auto pz = abs_d(e).samples();
      for (int j = 0; j < n; ++j) rhs[r](j) = -((a(j) - 1.0) * pxx[j] + b(j) * pxz[j] - c(j) * pz[j]);
    }
  }

  // Eliminate from the bottom: S_r = D_r - U_r S_{r+1}^{-1} L_{r+1}, y_r = f_r - U_r S_{r+1}^{-1} y_{r+1}.
  Eigen::PartialPivLU<Mat> lu_next;
  Vec y_next;
  Eigen::PartialPivLU<Mat> lu_row1;
  Vec y_row1;
  Mat up_row1;
  for (int r = rows - 1; r >= 0; --r) {
    Row R = row(r + 1);
    Mat S = R.diag;
    Vec y = rhs[r];
    if (r < rows - 1) {
      Row below = row(r + 2);
      S.noalias() -= R.down * lu_next.solve(below.up);
      y.noalias() -= R.down * lu_next.solve(y_next);
    }
    if (r == 1) {
      lu_row1 = Eigen::PartialPivLU<Mat>(S);
      y_row1 = y;
      up_row1 = R.up;
    }
    lu_next = Eigen::PartialPivLU<Mat>(S);
    y_next = y;
  }
  Vec phi1 = lu_next.solve(y_next);
  Vec phi2 = lu_row1.solve(y_row1 - up_row1 * phi1);
  if (!phi1.allFinite() || !phi2.allFinite()) throw NumericalError("dn_oracle", "singular linear system");

  double h1 = z[0] - z[1], h2 = z[1] - z[2], H = h1 + h2;
  double c0 = (h1 + H) / (h1 * H), c1 = -H / (h1 * h2), c2 = h1 / (H * h2);
  Vec dz(n);
  if (form == OracleForm::direct) {
    dz = c0 * to_vec(psi.samples()) + c1 * phi1 + c2 * phi2;
  } else {
    dz = to_vec(abs_d(psi).samples()) + c1 * phi1 + c2 * phi2;
  }
  auto px = dx(psi).samples();
  std::vector<double> gval(n);
  for (int j = 0; j < n; ++j) gval[j] = (1.0 + ep[j] * ep[j]) * dz(j) - ep[j] * px[j];
  return Field::from_samples(g, gval);
}

}  // namespace wwlab
