#pragma once
#include "router/constants.hpp"

namespace router {

// Conversion bundle between SI and the dimensionless system: lengths in units
// of the sample size L, times in units of 1/gamma.
struct PhysicalUnits {
  double cloud_length = 0.01;            // m, sample size L
  double gamma = 3.5269701e7;            // 1/s, optical coherence decay rate
  double lambda_signal = consts::lambda_d1;
  double omega_gs = consts::omega_gs;    // rad/s, |g>-|s> splitting

  double c_tilde() const { return consts::c_light / (gamma * cloud_length); }
  double time_unit() const { return 1.0 / gamma; } // s per tilde-time
  double k_signal() const { return 2.0 * consts::pi / lambda_signal; } // 1/m
  // control carrier magnitude from two-photon resonance c|k_s| - c|k_c| = omega_gs
  double k_control() const { return k_signal() - omega_gs / consts::c_light; }
};

// Default operating point: L = 10 mm and gamma chosen so that c_tilde = 850.
PhysicalUnits default_units();

}
