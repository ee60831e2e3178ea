#include "router/hardware.hpp"

#include <cmath>
#include <stdexcept>

namespace router {

CoilDesign design_coil(double a, double gradient_target, double tau_target, int n_c) {
  if (!(a > 0.0) || gradient_target < 0.0 || !(tau_target > 0.0) || n_c <= 0)
    throw std::invalid_argument("design_coil: need a > 0, G >= 0, tau > 0, N_c > 0");
  CoilDesign d;
  d.a = a;
  d.n_c = n_c;
  d.gradient = gradient_target;
  d.tau = tau_target;
  // 0.64 mu0 N/a^2 is T/m per A; 1 T/m = 100 G/cm
  d.efficiency_coeff = 0.64 * consts::mu0 * n_c / (a * a) * 100.0;
  d.current = gradient_target / d.efficiency_coeff;
  d.inductance = consts::pi * static_cast<double>(n_c) * n_c * a * consts::mu0;
  d.voltage = d.inductance * d.current / tau_target;
  return d;
}

double coil_voltage_with_resistance(const CoilDesign& d, double resistance_ohm) {
  return d.voltage + resistance_ohm * d.current;
}

TwoLevelParams subspace_params(Subspace s, double b0_gauss, double b1_gauss, double tau_s) {
  if (!(tau_s > 0.0))
    throw std::invalid_argument("subspace_params: tau must be positive");
  const double au = consts::a_hfs / consts::hbar; // rad/s
  const double mb = consts::mu_bohr / consts::hbar;
  const double gp = 0.5 * (consts::g_s - consts::g_i);
  const double b0 = b0_gauss * 1e-4; // T
  const double b1 = b1_gauss * 1e-4;
  TwoLevelParams p;
  p.subspace = s;
  p.b0 = b0_gauss;
  p.b1 = b1_gauss;
  p.tau = tau_s;
  switch (s) {
    case Subspace::H1:
      p.v = 0.5 * std::sqrt(3.0) * au;
      p.eps = -0.5 * au + gp * mb * b0;
      p.b = gp * mb * b1 / tau_s;
      break;
    case Subspace::H2:
      p.v = au;
      p.eps = -gp * mb * b0;
      p.b = -gp * mb * b1 / tau_s;
      break;
    case Subspace::H3:
      p.v = 0.5 * std::sqrt(3.0) * au;
      p.eps = 0.5 * au - gp * mb * b0;
      p.b = -gp * mb * b1 / tau_s;
      break;
    default:
      throw std::invalid_argument("subspace_params: unknown subspace");
  }
  return p;
}

double landau_zener_z(double v, double b) {
  if (b == 0.0)
    throw std::invalid_argument("landau_zener_z: degenerate sweep, b = 0");
  return v * v / std::abs(2.0 * b);
}

double landau_zener_p(double v, double b) {
  return std::exp(-consts::pi * landau_zener_z(v, b));
}

namespace {

// instantaneous eigenvector of v sigma_x + eps sigma_z on the upper (plus) or
// lower branch; v >= 0 keeps the mixing angle in [0, pi]
void eigvec(double v, double eps, bool upper, cplx& e0, cplx& e1) {
  const double theta = std::atan2(v, eps);
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  if (upper) {
    e0 = c;
    e1 = s;
  } else {
    e0 = -s;
    e1 = c;
  }
}

} // namespace

SweepResult two_level_sweep(const TwoLevelParams& p, long steps) {
  if (steps < 1)
    throw std::invalid_argument("two_level_sweep: need at least one step");
  if (!(p.tau > 0.0))
    throw std::invalid_argument("two_level_sweep: tau must be positive");
  const double dt = p.tau / steps;
  const double eps_end = p.eps + p.b * p.tau;
  const double w_max = std::hypot(p.v, std::max(std::abs(p.eps), std::abs(eps_end)));
  if (w_max * dt >= 0.1)
    throw std::invalid_argument("two_level_sweep: phase per step exceeds 0.1 rad, "
                                "increase the step count");

  // start on the branch of H(0) with the larger overlap with (1,0)
  cplx u0, u1;
  eigvec(p.v, p.eps, true, u0, u1);
  const bool upper = std::norm(u0) >= 0.5;
  cplx psi0, psi1;
  eigvec(p.v, p.eps, upper, psi0, psi1);

  SweepResult res;
  const long stride = std::max(1L, (steps + 1999) / 2000);
  auto record = [&](double t) {
    cplx e0, e1;
    eigvec(p.v, p.eps + p.b * t, upper, e0, e1);
    const cplx ov = std::conj(e0) * psi0 + std::conj(e1) * psi1;
    res.trace.push_back({t, psi0, psi1, std::norm(ov)});
  };
  record(0.0);

  for (long n = 0; n < steps; ++n) {
    const double tm = (n + 0.5) * dt;
    const double nz = p.eps + p.b * tm;
    const double w = std::hypot(p.v, nz);
    const double ph = w * dt;
    const double c = std::cos(ph);
    const double s = w > 0.0 ? std::sin(ph) / w : dt; // sinc limit for w -> 0
    // exp(-i dt (v sx + nz sz)) = c I - i s (v sx + nz sz)
    const cplx a0 = cplx(c, -s * nz) * psi0 + cplx(0.0, -s * p.v) * psi1;
    const cplx a1 = cplx(0.0, -s * p.v) * psi0 + cplx(c, s * nz) * psi1;
    psi0 = a0;
    psi1 = a1;
    const long m = n + 1;
    if (m % stride == 0 || m == steps) record(m * dt);
  }
  res.survival = res.trace.back().survival;
  return res;
}

}
