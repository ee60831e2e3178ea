#include "router/phasematch.hpp"

#include <cmath>
#include <stdexcept>

namespace router {

double mag(const vec2& a) { return std::hypot(a[0], a[1]); }

vec2 WaveGeometry::k_c() const {
  return {k_c_mag * std::cos(theta), k_c_mag * std::sin(theta)};
}

WaveGeometry geometry_for(const PhysicalUnits& u, double theta) {
  return {u.k_signal(), u.k_control(), theta};
}

vec2 kappa_of(const WaveGeometry& w) {
  const vec2 kc = w.k_c();
  return {w.k_s_mag - kc[0], -kc[1]};
}

vec2 delta_for_angle(double phi, double k_s_mag) {
  return {k_s_mag * (std::cos(phi) - 1.0), k_s_mag * std::sin(phi)};
}

EmittedWave emitted_wavevector(const vec2& kappa_new, const vec2& k_c_new, double k_s_mag) {
  EmittedWave e;
  e.k_s_new = {kappa_new[0] + k_c_new[0], kappa_new[1] + k_c_new[1]};
  const double m = mag(e.k_s_new);
  e.k_mis = m - k_s_mag;
  e.phi = m > 0.0 ? std::atan2(e.k_s_new[1], e.k_s_new[0]) : 0.0;
  return e;
}

void apply_phase_ramp(ComplexField& f, const PhaseRamp& ramp, double cloud_length) {
  const GridSpec& g = f.grid;
  const double px = ramp.delta[0] * cloud_length;
  const double py = ramp.delta[1] * cloud_length;
  for (int j = 0; j < g.ny; ++j) {
    const double y = g.y(j);
    for (int i = 0; i < g.nx; ++i)
      f.at(i, j) *= std::polar(1.0, px * g.x(i) + py * y);
  }
}

GaussianFit fit_gaussian_suppression(const std::vector<double>& k,
                                     const std::vector<double>& eta) {
  const size_t n = k.size();
  if (n != eta.size() || n < 5)
    throw std::invalid_argument("fit_gaussian_suppression: need >= 5 paired samples");

  // linear least squares of ln(eta) against k^2
  double sx = 0.0, sy = 0.0;
  std::vector<double> xs(n), ys(n);
  for (size_t m = 0; m < n; ++m) {
    if (!(eta[m] > 0.0))
      throw std::invalid_argument("fit_gaussian_suppression: efficiencies must be positive");
    xs[m] = k[m] * k[m];
    ys[m] = std::log(eta[m]);
    sx += xs[m];
    sy += ys[m];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t m = 0; m < n; ++m) {
    sxx += (xs[m] - mx) * (xs[m] - mx);
    sxy += (xs[m] - mx) * (ys[m] - my);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("fit_gaussian_suppression: sweep variable is constant");
  const double slope = sxy / sxx;
  if (!(slope < 0.0))
    throw std::invalid_argument("fit_gaussian_suppression: no suppression trend in samples");
  GaussianFit fit;
  fit.width = 1.0 / std::sqrt(-slope);
  fit.eta0 = std::exp(my - slope * mx);
  return fit;
}

}
