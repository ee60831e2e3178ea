#pragma once
#include "router/params.hpp"

namespace router {

// Incoming signal envelope, normalized to unit mean photon number:
//   E(x,y,t) = A exp(-((x - c(t - arrival_t))/w_par)^2 - (y/w_perp)^2)
// with the same Gaussian of width w_perp out of plane. A carrier offset
// k_mis (cloud units, k L) adds the free-streaming phase
// exp(i k_mis (x - c(t - arrival_t))), i.e. a frequency shift of
// c_tilde*k_mis in units of gamma.
struct SignalSpec {
  double w_par = 100.0;   // e^-1 half-length along propagation
  double w_perp = 0.2;    // transverse e^-1 half-width
  double arrival_t = 0.0; // time the peak crosses the cloud center x = 0
  double k_mis = 0.0;

  double amplitude() const; // fixed by <N_ph> = 1
};

cplx signal_value(const SignalSpec& s, double c_tilde, double x, double y, double t);
ComplexField signal_envelope(const SignalSpec& s, const GridSpec& g, double c_tilde, double t);

// Classical control envelope: real Rabi frequency in units of gamma, peak at
// (x0, y0) at time t0, propagating along (cos theta, sin theta) at c.
struct ControlSpec {
  double amplitude = 0.0;
  double w_par = 100.0; // e^-1 half-length along the propagation direction
  double w_perp = 0.5;  // e^-1 half-width across it
  double theta = 0.0;   // radians
  double t0 = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
};

double control_value(const ControlSpec& c, double c_tilde, double x, double y, double t);
ComplexField control_field(const ControlSpec& c, const GridSpec& g, double c_tilde, double t);

// The same beam expressed in a frame rotated by -phi about the cloud center.
ControlSpec control_in_rotated_frame(const ControlSpec& c, double phi);

}
