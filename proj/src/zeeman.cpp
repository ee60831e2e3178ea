#include "router/zeeman.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace router {

ZeemanConfig fast_small_angle_preset() {
  ZeemanConfig cfg;
  cfg.gradient = 7.0;
  cfg.t_rise = 1e-7;
  return cfg;
}

double manipulation_time(double delta_mag, const ZeemanConfig& cfg) {
  if (delta_mag < 0.0)
    throw std::invalid_argument("manipulation_time: |delta| must be >= 0");
  if (!(cfg.gradient > 0.0) || cfg.mu_diff_over_hbar == 0.0)
    throw std::invalid_argument("manipulation_time: gradient must be positive, mu' nonzero");
  // gradient G/cm -> G/m; delta [1/m] = mu' [rad/(s G)] * grad [G/m] * T
  return delta_mag / (std::abs(cfg.mu_diff_over_hbar) * cfg.gradient * 100.0);
}

ManipulationPlan plan_manipulation(const vec2& delta, const ZeemanConfig& cfg) {
  ManipulationPlan p;
  p.delta = delta;
  p.duration = manipulation_time(mag(delta), cfg);
  p.total_time = p.duration + 2.0 * cfg.t_rise;
  return p;
}

double accumulated_phase(const vec2& delta, const vec2& r) { return dot(delta, r); }

double decoherence_time(double temperature, double kappa_mag) {
  if (!(temperature > 0.0) || kappa_mag < 0.0)
    throw std::invalid_argument("decoherence_time: need T > 0 and kappa >= 0");
  if (kappa_mag == 0.0) return std::numeric_limits<double>::infinity();
  const double v_th = std::sqrt(consts::k_b * temperature / consts::m_rb);
  return 1.0 / (v_th * kappa_mag);
}

const char* to_string(Manipulable m) {
  switch (m) {
    case Manipulable::comfortable: return "comfortable";
    case Manipulable::marginal: return "marginal";
    default: return "infeasible";
  }
}

std::vector<FeasibilityCell> feasibility_map(const std::vector<double>& temps,
                                             const std::vector<double>& kappas,
                                             const ZeemanConfig& cfg) {
  std::vector<FeasibilityCell> out;
  out.reserve(temps.size() * kappas.size());
  for (double T : temps) {
    for (double k : kappas) {
      FeasibilityCell c;
      c.temperature = T;
      c.kappa_mag = k;
      c.t_decoh = decoherence_time(T, k);
      c.t_manip = manipulation_time(k, cfg) + 2.0 * cfg.t_rise;
      if (c.t_manip < 0.1 * c.t_decoh)
        c.manipulable = Manipulable::comfortable;
      else if (c.t_manip < c.t_decoh)
        c.manipulable = Manipulable::marginal;
      else
        c.manipulable = Manipulable::infeasible;
      out.push_back(c);
    }
  }
  return out;
}

CancellationPair momentum_cancellation(const vec2& kappa, const vec2& delta) {
  CancellationPair p;
  p.delta1 = {-kappa[0], -kappa[1]};
  p.delta2 = {kappa[0] + delta[0], kappa[1] + delta[1]};
  return p;
}

}
