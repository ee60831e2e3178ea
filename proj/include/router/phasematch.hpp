#pragma once
#include "router/params.hpp"

#include <array>
#include <vector>

namespace router {

using vec2 = std::array<double, 2>;

inline double dot(const vec2& a, const vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
double mag(const vec2& a);

// Carrier wavevectors (SI, 1/m) in the absorption frame: signal along +x,
// control at angle theta, |k_c| fixed by two-photon resonance.
struct WaveGeometry {
  double k_s_mag = 0.0;
  double k_c_mag = 0.0;
  double theta = 0.0;

  vec2 k_s() const { return {k_s_mag, 0.0}; }
  vec2 k_c() const;
};

WaveGeometry geometry_for(const PhysicalUnits& u, double theta);

// Spin-wave carrier picked up during absorption, kappa = k_s - k_c.
vec2 kappa_of(const WaveGeometry& w);

// Wavevector that redirects emission by phi while staying on shell:
// delta = |k_s| (cos phi - 1, sin phi), so |k_s + delta| = |k_s| exactly.
vec2 delta_for_angle(double phi, double k_s_mag);

struct EmittedWave {
  vec2 k_s_new;  // kappa' + k_c'
  double k_mis;  // signed off-shell mismatch |k_s_new| - k_s_mag
  double phi;    // emission direction, atan2 convention
};

EmittedWave emitted_wavevector(const vec2& kappa_new, const vec2& k_c_new, double k_s_mag);

// Linear phase imprint S -> exp(i delta . r) S. delta in 1/m; the grid lives
// in cloud units so the phase per unit coordinate is delta*L.
struct PhaseRamp {
  vec2 delta{0.0, 0.0};
};

void apply_phase_ramp(ComplexField& f, const PhaseRamp& ramp, double cloud_length);

struct GaussianFit {
  double width = 0.0; // 1/e half-width in the sweep variable
  double eta0 = 0.0;  // fitted peak
};

// Least squares of ln eta = ln eta0 - (k/width)^2 over >= 5 samples, eta > 0.
GaussianFit fit_gaussian_suppression(const std::vector<double>& k,
                                     const std::vector<double>& eta);

}
