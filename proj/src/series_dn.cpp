#include <cmath>

#include "wwlab/dirichlet_neumann.hpp"

namespace wwlab {

// G_0 = |D|,
// G_n psi = (1/n!) |D|^{n-1} D eta^n D psi - sum_{j<n} |D|^{n-j} (eta^{n-j}/(n-j)!) G_j psi,
// with D = -i d/dx, so that D eta^n D psi = -d/dx(eta^n d/dx psi).
Field SeriesDN::apply(const Field& eta, const Field& psi) const {
  require_same_grid(eta, psi, "series_dn");
  const Grid& g = eta.grid;
  auto e = fine(eta);
  const size_t m = e.size();
  // powers[n][j] = eta^n / n! on the 2N grid.
  std::vector<std::vector<double>> powers(order_ + 1, std::vector<double>(m, 1.0));
  for (int n = 1; n <= order_; ++n)
    for (size_t j = 0; j < m; ++j) powers[n][j] = powers[n - 1][j] * e[j] / n;

  auto times_power = [&](int n, const std::vector<double>& f) {
    std::vector<double> p(m);
    for (size_t j = 0; j < m; ++j) p[j] = powers[n][j] * f[j];
    return from_fine(g, p);
  };

  std::vector<std::vector<double>> terms_fine;
  Field psi_x = dx(psi);
  auto psi_x_fine = fine(psi_x);
  Field gn = abs_d(psi);
  terms_fine.push_back(fine(gn));
  Field total = gn;
  for (int n = 1; n <= order_; ++n) {
    Field acc = -dx(times_power(n, psi_x_fine));
    acc = abs_d(acc, n - 1.0);
    for (int j = 0; j < n; ++j) acc -= abs_d(times_power(n - j, terms_fine[j]), static_cast<double>(n - j));
    total += acc;
    if (n < order_) terms_fine.push_back(fine(acc));
  }
  return total;
}

}  // namespace wwlab
