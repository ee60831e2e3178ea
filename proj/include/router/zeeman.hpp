#pragma once
#include "router/phasematch.hpp"

#include <vector>

namespace router {

// Magnetic-gradient manipulation: a gradient pulse of duration T imprints the
// linear spin-wave phase phi(r) = delta . r with |delta| = mu' grad T, where
// mu' = (mu_g - mu_s)/hbar. Gradients are given in G/cm, deltas in 1/m.
struct ZeemanConfig {
  double gradient = 50.0; // G/cm
  double mu_diff_over_hbar = consts::mu_diff_over_hbar;
  double t_rise = 5e-6; // s, coil rise time added on both ends
};

// small-angle manipulations get away with a weaker, faster coil
ZeemanConfig fast_small_angle_preset();

struct ManipulationPlan {
  vec2 delta{0.0, 0.0}; // 1/m
  double duration = 0.0;   // s, gradient-on time T
  double total_time = 0.0; // s, T + 2 t_rise
};

double manipulation_time(double delta_mag, const ZeemanConfig& cfg);
ManipulationPlan plan_manipulation(const vec2& delta, const ZeemanConfig& cfg);

// phi_tot(r) = delta . r; the global constant part is dropped
double accumulated_phase(const vec2& delta, const vec2& r);

// 1/(v_th kappa) with v_th = sqrt(k_B T / m_Rb); kappa = 0 gives +inf
double decoherence_time(double temperature, double kappa_mag);

enum class Manipulable { comfortable, marginal, infeasible };
const char* to_string(Manipulable m);

struct FeasibilityCell {
  double temperature = 0.0; // K
  double kappa_mag = 0.0;   // 1/m
  double t_decoh = 0.0;     // s
  double t_manip = 0.0;     // s, manipulation_time(kappa) + 2 t_rise
  Manipulable manipulable = Manipulable::infeasible;
};

// row-major over (temps outer, kappas inner); comfortable needs a 10x margin
std::vector<FeasibilityCell> feasibility_map(const std::vector<double>& temps,
                                             const std::vector<double>& kappas,
                                             const ZeemanConfig& cfg);

// Two-pulse schedule that erases the stored grating during the wait:
// delta1 = -kappa right after storage, delta2 = kappa + delta before retrieval,
// composing to the requested delta.
struct CancellationPair {
  vec2 delta1{0.0, 0.0};
  vec2 delta2{0.0, 0.0};
};
CancellationPair momentum_cancellation(const vec2& kappa, const vec2& delta);

}
