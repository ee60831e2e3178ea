#pragma once
#include "router/grid.hpp"
#include "router/units.hpp"

namespace router {

// Uniform spherical cloud of unit volume: radius (3/(4 pi))^(1/3) in cloud
// units, relative density 1 inside and 0 outside. The simulation plane cuts
// the sphere through its center.
struct DensityProfile {
  double radius;
  DensityProfile();
  bool inside(double x, double y) const { return x * x + y * y <= radius * radius; }
};

struct SimParams {
  PhysicalUnits units;
  GridSpec grid;
  double c_tilde = 850.0;
  double g_tilde = 0.0;     // sqrt(N) g / gamma, collective coupling
  double delta_tilde = 0.0; // one-photon detuning in units of gamma
  double d = 0.0;           // optical depth over the unit length, g~^2/c~
  double d_prime = 0.0;     // diameter-based depth of the sphere, 1.24 d
  DensityProfile density;
  bool decay_disabled = false; // test hook: drops the -P damping term

  double dt() const { return grid.dx() / c_tilde; } // advection-locked step
};

SimParams make_params(const PhysicalUnits& units, const GridSpec& grid,
                      double g_tilde, double delta_tilde);
// convenience: g_tilde from a requested optical depth d = g~^2/c~
SimParams params_for_depth(const PhysicalUnits& units, const GridSpec& grid,
                           double d, double delta_tilde);

// Storage efficiency references as functions of the diameter-based depth.
double eta_cavity_max(double d_prime); // (1 - 1/(1+d'))^2
double eta_ref(double d_prime);        // (1 - 1/(1+d'/2.9))^2

// Acceptance bandwidth (units of gamma) for a pulse of e^-1 half-length w_par.
double signal_bandwidth(double c_tilde, double w_par);

}
