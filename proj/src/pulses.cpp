#include "router/pulses.hpp"

#include <cmath>
#include <stdexcept>

namespace router {

double SignalSpec::amplitude() const {
  if (!(w_par > 0.0) || !(w_perp > 0.0))
    throw std::invalid_argument("SignalSpec: widths must be positive");
  // 1 = A^2 * w_par w_perp^2 (pi/2)^(3/2) from the three Gaussian axes
  return 1.0 / std::sqrt(w_par * w_perp * w_perp * std::pow(consts::pi / 2.0, 1.5));
}

cplx signal_value(const SignalSpec& s, double c_tilde, double x, double y, double t) {
  const double u = x - c_tilde * (t - s.arrival_t);
  const double arg = -(u * u) / (s.w_par * s.w_par) - (y * y) / (s.w_perp * s.w_perp);
  const double mag = s.amplitude() * std::exp(arg);
  if (s.k_mis == 0.0) return cplx{mag, 0.0};
  return std::polar(mag, s.k_mis * u);
}

ComplexField signal_envelope(const SignalSpec& s, const GridSpec& g, double c_tilde, double t) {
  ComplexField f(g, s.w_perp);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      f.at(i, j) = signal_value(s, c_tilde, g.x(i), g.y(j), t);
  return f;
}

double control_value(const ControlSpec& c, double c_tilde, double x, double y, double t) {
  if (c.amplitude == 0.0) return 0.0;
  const double ct = std::cos(c.theta), st = std::sin(c.theta);
  const double rx = x - c.x0, ry = y - c.y0;
  const double upar = rx * ct + ry * st - c_tilde * (t - c.t0);
  const double uperp = -rx * st + ry * ct;
  return c.amplitude * std::exp(-(upar * upar) / (c.w_par * c.w_par)
                                - (uperp * uperp) / (c.w_perp * c.w_perp));
}

ComplexField control_field(const ControlSpec& c, const GridSpec& g, double c_tilde, double t) {
  ComplexField f(g, c.w_perp);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      f.at(i, j) = cplx{control_value(c, c_tilde, g.x(i), g.y(j), t), 0.0};
  return f;
}

ControlSpec control_in_rotated_frame(const ControlSpec& c, double phi) {
  ControlSpec r = c;
  r.theta = c.theta - phi;
  const double cp = std::cos(phi), sp = std::sin(phi);
  // R(-phi) applied to the beam waist position
  r.x0 = cp * c.x0 + sp * c.y0;
  r.y0 = -sp * c.x0 + cp * c.y0;
  return r;
}

}
