#include <cmath>
#include <stdexcept>

#include "wwlab/dirichlet_neumann.hpp"

namespace wwlab {

std::vector<double> make_zgrid(int n_z, double z_max, double h0) {
  if (n_z < 4) throw std::invalid_argument("z-grid: need at least 4 nodes");
  if (!(z_max > 0.0) || !(h0 > 0.0)) throw std::invalid_argument("z-grid: z_max and h0 must be positive");
  int n = n_z - 1;
  std::vector<double> h(n);
  if (h0 * n >= z_max) {
    for (auto& v : h) v = z_max / n;
  } else {
    // Solve h0 (r^n - 1) / (r - 1) = z_max for r > 1 by bisection.
    auto total = [&](double r) { return h0 * std::expm1(n * std::log(r)) / (r - 1.0); };
    double lo = 1.0 + 1e-15, hi = 2.0;
    while (total(hi) < z_max) hi = 1.0 + 2.0 * (hi - 1.0);
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (total(mid) < z_max ? lo : hi) = mid;
    }
    double r = 0.5 * (lo + hi);
    double w = h0;
    for (auto& v : h) {
      v = w;
      w *= r;
    }
  }
  std::vector<double> z(n_z, 0.0);
  for (int i = 1; i < n_z; ++i) z[i] = z[i - 1] - h[i - 1];
  z[n_z - 1] = -z_max;
  return z;
}

std::vector<double> DNParams::z_nodes(const Grid& g) const {
  return make_zgrid(n_z, z_max_factor / g.xi_min(), h0_factor / g.xi_max());
}

}  // namespace wwlab
