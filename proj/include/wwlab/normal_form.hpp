#pragma once

#include <vector>

#include "wwlab/evolution.hpp"
#include "wwlab/paradiff.hpp"

namespace wwlab {

// Pair of matrix symbols (X1, X2) acting as Op^B[v1, X1] f + Op^B[v2, X2] f.
struct SymbolPair {
  BilinearSymbol first, second;
};

SymbolPair operator+(const SymbolPair& a, const SymbolPair& b);
SymbolPair operator-(const SymbolPair& a, const SymbolPair& b);
SymbolPair adjoint(const SymbolPair& a);

FieldPair apply(const SymbolPair& E, const FieldPair& v, const FieldPair& f);

struct HomologicalInput {
  BilinearSymbol M1, M2;
};

// delta = |xi1+xi2| - |xi1| - |xi2| and the determinant delta^2 - 4|xi1||xi2| of the homological system.
double homological_delta(double xi1, double xi2);
double homological_det(double xi1, double xi2);

// Solves -D(xi1+xi2) A^k + A^k D(xi2) +- |xi1|^{1/2} A^{3-k} = M^k pointwise, D(xi) = [0 -1; 1 0] |xi|^{1/2}.
// Pairs where M vanishes get A = 0.
SymbolPair solve_homological(const HomologicalInput& m);

// max over pairs of the pointwise residual, divided by max |M|.
double homological_symbol_residual(const SymbolPair& a, const HomologicalInput& m);

// Correctors for the high-high terms S = S# + Sb and their right-hand sides.
// Sb carries the full second row of S(v)f.
struct SharpFlat {
  SymbolPair r_sharp, r_flat;  // E# and Eb
  SymbolPair m_sharp, m_flat;  // S# and Sb
};
SharpFlat build_e_sharp_flat(const Grid& g, const CutoffTheta& th);

// Relative L2 residual of E(Dv)f + E(v)Df - D[E(v)f] - Pi(v)f.
double homological_check(const SymbolPair& e, const SymbolPair& pi, const FieldPair& v, const FieldPair& f);

// Symbols of Q(v): Q(v)f = Op^B[v1, Q1] f + Op^B[v2, Q2] f.
SymbolPair q_symbols(const Grid& g, const CutoffTheta& th);

// <xi>^{2s} on mode k.
double bracket_weight(const Grid& g, int k, double s);

// w(xi1, xi2) = <xi1+xi2>^{2b} / (<xi1+xi2>^{2b} + <xi2>^{2b}).
ScalarTable weight_table(const Grid& g, double beta);

// Self-adjoint B(v) with Re<(Q(v) - B(v)) f, f>_{H^s} = 0.
SymbolPair build_b_of_v(const Grid& g, double s, const CutoffTheta& th);

// Weighted correctors R_b = w R + adjoint(w R) and right-hand sides w M + adjoint(w M).
struct WeightedCorrectors {
  SymbolPair e_sharp, e_flat;
  SymbolPair frak_sharp, frak_flat;
};
WeightedCorrectors build_weighted(const Grid& g, double beta, const CutoffTheta& th);

struct NormalFormKit {
  double s_index = 4.0;
  SymbolPair BA;      // B(v)
  SymbolPair EA;      // solves E(Dv) + E(v)D - DE(v) = -B(v)
  SymbolPair ER;      // weighted E# + Eb
  SymbolPair frak_S;  // right-hand side of ER
  SymbolPair S;       // S(v) as a symbol
};
NormalFormKit build_kit(const Grid& g, double s_index, const CutoffTheta& th);

// Phi = U + E_A(u) U - E_R(u) U.
FieldPair phi_transform(const SymmetrizedState& y, const NormalFormKit& kit);

struct DriftConfig {
  double amplitude = 0.02;  // the second run uses amplitude / 2
  double t_final = 10.0;
  double dt = 0.01;
  int sample_every = 10;
  double beta = 4.0;
  int series_order = 6;
  bool filter = false;
  CutoffTheta theta;
};

struct DriftRun {
  double amplitude = 0.0;
  std::vector<double> t, energy_naive, energy_phi;
  std::vector<SurfaceState> states;  // the sampled snapshots
  double drift_naive = 0.0, drift_phi = 0.0;  // max_t |E(t) - E(0)|
};

struct DriftReport {
  DriftRun large, small;
  double exponent_naive = 0.0, exponent_phi = 0.0;
  double rk_error_phi = 0.0;  // time-stepping share of the Phi-energy drift at the larger amplitude
  bool rk_resolved = false;   // rk_error_phi <= drift_phi / 100
};

// shape: unit-amplitude initial state; runs at amplitude and amplitude / 2.
DriftReport energy_drift_experiment(const SurfaceState& shape, const DriftConfig& cfg);
DriftRun energy_drift_run(const SurfaceState& shape, double amplitude, double dt, const DriftConfig& cfg,
                          const NormalFormKit& kit);

}  // namespace wwlab
