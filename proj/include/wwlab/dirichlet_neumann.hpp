#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wwlab/errors.hpp"
#include "wwlab/paradiff.hpp"
#include "wwlab/spectral.hpp"

namespace wwlab {

// Graded nodes 0 = z_0 > z_1 > ... > z_{n-1} = -z_max with geometric spacing
// starting at h0 (uniform if h0 * (n - 1) >= z_max).
std::vector<double> make_zgrid(int n_z, double z_max, double h0);

struct DNParams {
  int n_z = 200;
  double z_max_factor = 8.0;  // z_max = z_max_factor / xi_min
  double h0_factor = 0.02;    // first spacing = h0_factor / xi_max
  double tol = 1e-12;
  int max_iter = 200;
  bool relax = true;

  std::vector<double> z_nodes(const Grid& g) const;
};

// Gradient of the flattened potential on the z-nodes.
struct StripField {
  Grid grid;
  std::vector<double> z;
  std::vector<Field> dx_phi, dz_phi;
  int iterations = 0;
  double residual = 0.0;
};

class DNOperator {
 public:
  virtual ~DNOperator() = default;
  virtual Field apply(const Field& eta, const Field& psi) const = 0;
  virtual std::string name() const = 0;
};

// Fixed-point solve of the flattened elliptic problem. The z-integrals of the
// exponential kernels use product integration with local cubic interpolation,
// exact for the kernel factor e^{-|xi||z - z'|}.
class FixedPointDN : public DNOperator {
 public:
  explicit FixedPointDN(const Grid& g, DNParams p = {});
  FixedPointDN(const Grid& g, const std::vector<double>& z, DNParams p = {});

  StripField harmonic_extension(const Field& eta, const Field& psi) const;
  Field apply(const Field& eta, const Field& psi) const override;
  std::string name() const override { return "fixed_point"; }

  const std::vector<double>& z() const { return z_; }
  const DNParams& params() const { return params_; }
  const Grid& grid() const { return grid_; }

 private:
  void precompute();

  Grid grid_;
  DNParams params_;
  std::vector<double> z_;
  int nk_ = 0;                     // modes 0..band
  std::vector<int> stencil_lo_;    // per interval
  std::vector<double> w_down_;     // [interval][m][k]
  std::vector<double> w_up_;       // [interval][m][k]
  std::vector<double> decay_;      // [interval][k] e^{-|xi| h}
  std::vector<double> growth_;     // [node][k] e^{z |xi|}
};

// Craig-Sulem expansion G = sum_{n <= order} G_n(eta) psi.
class SeriesDN : public DNOperator {
 public:
  explicit SeriesDN(int order = 6) : order_(order) {}
  Field apply(const Field& eta, const Field& psi) const override;
  std::string name() const override { return "series"; }
  int order() const { return order_; }

 private:
  int order_;
};

enum class OracleForm { direct, lifted };

// Independent DN value from a finite-difference solve of the transformed elliptic
// equation on the z-nodes: spectral collocation in x, second order in z, Neumann
// bottom, block elimination from the bottom up. The lifted form solves for
// phi - e^{z|D|}psi with an analytically evaluated source.
Field dn_oracle(const Field& eta, const Field& psi, const std::vector<double>& z,
                OracleForm form = OracleForm::lifted);

// B = (G + eta' psi') / (1 + eta'^2), V = psi' - B eta'.
Field b_from_g(const Field& eta, const Field& psi, const Field& g);
Field v_from_b(const Field& eta, const Field& psi, const Field& b);

struct SurfaceDiagnostics {
  Field G, B, V, omega, F, a, alpha;
};

// Taylor coefficient from the identity with G(eta) applied to V^2, B^2 and eta.
Field taylor_coefficient(const DNOperator& dn, const Field& eta, const Field& b, const Field& v);

SurfaceDiagnostics traces(const DNOperator& dn, const Field& eta, const Field& psi, const CutoffTheta& th);

// Taylor operators in eta; all products dealiased.
Field dn_taylor(const Field& eta, const Field& psi, int order);
Field b_taylor(const Field& eta, const Field& psi, int order);
Field v_taylor(const Field& eta, const Field& psi, int order);
// Quadratic part of F written with paraproducts.
Field f_taylor2(const Field& eta, const Field& psi, const CutoffTheta& th);
// The same quantity written with remainders only.
Field f_taylor2_remainder_form(const Field& eta, const Field& psi, const CutoffTheta& th);
// P+(eta) psi = |D| psi + T_{P - |xi|} psi, P = (i eta' xi + |xi|) / (1 + eta'^2).
Field p_plus_apply(const Field& eta, const Field& psi, const CutoffTheta& th);
// The symbol P - |xi| sampled per xi (for the generic paradifferential path).
SymbolFn p_minus_abs_symbol(const Field& eta);

}  // namespace wwlab
