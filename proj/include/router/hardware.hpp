#pragma once
#include "router/grid.hpp"
#include "router/constants.hpp"

#include <vector>

namespace router {

// Maxwell coil pair arithmetic. The gradient per ampere is
// 0.64 mu0 N_c / a^2 in T/m, stored here in G/cm per A; inductance is the
// short-coil estimate pi N_c^2 a mu0; the rise time excludes the resistive
// drop (valid while V_c >> R I).
struct CoilDesign {
  double a = 0.0;        // m, coil radius
  int n_c = 0;           // winding count
  double current = 0.0;  // A
  double voltage = 0.0;  // V
  double inductance = 0.0; // H
  double gradient = 0.0; // G/cm
  double tau = 0.0;      // s
  double efficiency_coeff = 0.0; // G/cm per A
};

CoilDesign design_coil(double a, double gradient_target, double tau_target, int n_c);

// optional resistive correction the rise-time estimate leaves out
double coil_voltage_with_resistance(const CoilDesign& d, double resistance_ohm);

// Ground-state manifold adiabaticity reduces to three two-level blocks
// H = hbar v sigma_x + hbar (eps + b t) sigma_z swept over t in [0, tau].
enum class Subspace { H1, H2, H3 };

struct TwoLevelParams {
  double v = 0.0;   // rad/s
  double eps = 0.0; // rad/s
  double b = 0.0;   // rad/s^2
  Subspace subspace = Subspace::H1;
  double b0 = 0.0; // G
  double b1 = 0.0; // G
  double tau = 0.0; // s
};

TwoLevelParams subspace_params(Subspace s, double b0_gauss, double b1_gauss, double tau_s);

// z = v^2/|2b|, p = exp(-pi z); the diabatic transition probability
double landau_zener_z(double v, double b);
double landau_zener_p(double v, double b);

struct SweepRow {
  double t = 0.0; // s
  cplx c0, c1;    // state components
  double survival = 0.0;
};

struct SweepResult {
  double survival = 0.0;
  std::vector<SweepRow> trace; // subsampled to at most ~2000 rows
};

// Midpoint exact-exponential propagation from t=0 to tau. The initial state
// is the instantaneous eigenstate of H(0) closest to (1,0); survival is the
// squared overlap with the same eigenvalue branch at tau. Requires the phase
// advance per step to stay below 0.1 rad.
SweepResult two_level_sweep(const TwoLevelParams& p, long steps);

}
