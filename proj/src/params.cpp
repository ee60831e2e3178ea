#include "router/params.hpp"

#include <cmath>
#include <stdexcept>

namespace router {

double ComplexField::z_factor() const {
  return z_width * std::sqrt(consts::pi / 2.0);
}

double norm_quadrature(const ComplexField& f) {
  double total = 0.0;
  const int nx = f.grid.nx;
  for (int j = 0; j < f.grid.ny; ++j) {
    double row = 0.0;
    const cplx* p = f.v.data() + static_cast<size_t>(j) * nx;
    for (int i = 0; i < nx; ++i) row += std::norm(p[i]);
    total += row;
  }
  return f.z_factor() * f.grid.dx() * f.grid.dy() * total;
}

PhysicalUnits default_units() {
  PhysicalUnits u;
  u.cloud_length = 0.01;
  u.gamma = consts::c_light / (850.0 * u.cloud_length);
  return u;
}

DensityProfile::DensityProfile() : radius(std::cbrt(3.0 / (4.0 * consts::pi))) {}

SimParams make_params(const PhysicalUnits& units, const GridSpec& grid,
                      double g_tilde, double delta_tilde) {
  if (!(units.cloud_length > 0.0) || !(units.gamma > 0.0))
    throw std::invalid_argument("make_params: units must have positive L and gamma");
  if (!(units.c_tilde() > 0.0))
    throw std::invalid_argument("make_params: c_tilde must be positive");
  if (grid.nx < 2 || grid.ny < 1)
    throw std::invalid_argument("make_params: grid too small");
  if (!(grid.x_extent > 0.0) || !(grid.y_extent > 0.0))
    throw std::invalid_argument("make_params: grid extents must be positive");
  if (g_tilde < 0.0)
    throw std::invalid_argument("make_params: g_tilde must be non-negative");

  SimParams p;
  p.units = units;
  p.grid = grid;
  p.c_tilde = units.c_tilde();
  p.g_tilde = g_tilde;
  p.delta_tilde = delta_tilde;
  p.d = g_tilde * g_tilde / p.c_tilde;
  // diameter over unit length is 2*(3/(4 pi))^(1/3) = 1.2407, kept at 1.24
  p.d_prime = 1.24 * p.d;
  return p;
}

SimParams params_for_depth(const PhysicalUnits& units, const GridSpec& grid,
                           double d, double delta_tilde) {
  if (d < 0.0) throw std::invalid_argument("params_for_depth: d must be non-negative");
  return make_params(units, grid, std::sqrt(d * units.c_tilde()), delta_tilde);
}

double eta_cavity_max(double d_prime) {
  if (d_prime < 0.0) throw std::invalid_argument("eta_cavity_max: negative depth");
  const double r = 1.0 - 1.0 / (1.0 + d_prime);
  return r * r;
}

double eta_ref(double d_prime) {
  if (d_prime < 0.0) throw std::invalid_argument("eta_ref: negative depth");
  const double r = 1.0 - 1.0 / (1.0 + d_prime / 2.9);
  return r * r;
}

double signal_bandwidth(double c_tilde, double w_par) {
  if (!(w_par > 0.0)) throw std::invalid_argument("signal_bandwidth: w_par must be positive");
  return c_tilde / w_par;
}

}
