#include "router/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace router {

OptProblem absorption_problem(const SimParams& pr, const SignalSpec& sig, double theta,
                              const Window& win, int budget, unsigned seed) {
  OptProblem prob;
  // endpoint-only sampling; the search needs eta_abs, not the time series
  prob.objective = [pr, sig, win](const ControlSpec& c) {
    return run_absorption(pr, sig, c, win, 1 << 30).report.eta_abs;
  };
  prob.base.theta = theta;
  prob.t0 = {sig.arrival_t - 2.0 * sig.w_par / pr.c_tilde,
             sig.arrival_t + 2.0 * sig.w_par / pr.c_tilde};
  prob.x0 = {-pr.density.radius, pr.density.radius};
  prob.budget = budget;
  prob.seed = seed;
  prob.hints.push_back(starting_control(pr.d, theta, sig));
  return prob;
}

OptProblem full_cycle_problem(const SimParams& pr, const SignalSpec& sig, double theta,
                              const FullWindows& win, int budget, unsigned seed) {
  OptProblem prob = absorption_problem(pr, sig, theta, win.absorption, budget, seed);
  const PhaseRamp ramp{delta_for_angle(0.0, geometry_for(pr.units, theta).k_s_mag)};
  prob.objective = [pr, sig, win, ramp](const ControlSpec& c) {
    const Window em_win{win.absorption.t_end,
                        win.absorption.t_end + win.emission_factor * win.absorption.duration()};
    const ControlSpec ctl_em = emission_control(c, em_win, pr.c_tilde, pr.grid.x_extent);
    return run_full(pr, sig, c, ramp, ctl_em, 0.0, win).report.eta_total;
  };
  return prob;
}

ControlSpec starting_control(double d, double theta, const SignalSpec& sig) {
  ControlSpec c;
  // Rabi frequency that moves the population within the pulse passage; grows
  // with the coupling the medium provides
  c.amplitude = 6.0 + 2.5 * std::sqrt(std::max(1.0, d));
  c.w_par = 1.2 * sig.w_par;
  c.w_perp = 0.5;
  c.theta = theta;
  c.t0 = sig.arrival_t;
  c.x0 = 0.0;
  c.y0 = 0.0;
  return c;
}

ControlSpec emission_control(const ControlSpec& ctl_abs, const Window& em_win, double c_tilde,
                             double x_extent) {
  ControlSpec c = ctl_abs;
  c.t0 = em_win.t_start + (3.0 * c.w_par + 0.5 * x_extent) / c_tilde;
  c.x0 = 0.0;
  c.y0 = 0.0;
  return c;
}

double ledger_deviation(const std::vector<SeriesRow>& series) {
  double dev = 0.0;
  for (const SeriesRow& r : series)
    dev = std::max(dev, std::abs(r.n_ph + r.n_e + r.n_s + r.loss + r.leaked - 1.0));
  return dev;
}

std::vector<PhiSweepRow> phi_sweep(const SimParams& pr, const SignalSpec& sig,
                                   const ControlSpec& ctl_abs, const std::vector<double>& phis,
                                   const FullWindows& win) {
  const WaveGeometry wg = geometry_for(pr.units, ctl_abs.theta);
  std::vector<PhiSweepRow> out;
  out.reserve(phis.size());
  for (double phi : phis) {
    const PhaseRamp ramp{delta_for_angle(phi, wg.k_s_mag)};
    const Window em_win{win.absorption.t_end,
                        win.absorption.t_end + win.emission_factor * win.absorption.duration()};
    const ControlSpec ctl_em =
        emission_control(ctl_abs, em_win, pr.c_tilde, pr.grid.x_extent);
    const FullRunResult fr = run_full(pr, sig, ctl_abs, ramp, ctl_em, phi, win);
    PhiSweepRow row;
    row.phi = phi;
    row.eta_abs = fr.report.eta_abs;
    row.eta_em = fr.report.eta_em;
    row.eta_total = fr.report.eta_total;
    row.k_mis = fr.k_mis;
    row.ledger_dev = ledger_deviation(fr.report.series);
    out.push_back(row);
  }
  return out;
}

MismatchCurve mismatch_absorption(const SimParams& pr, const SignalSpec& sig,
                                  const ControlSpec& ctl, const Window& win,
                                  const std::vector<double>& k_gamma_c) {
  MismatchCurve curve;
  for (double k : k_gamma_c) {
    SignalSpec s = sig;
    s.k_mis = k / pr.c_tilde; // gamma/c to phase per cloud unit
    const RunResult rr = run_absorption(pr, s, ctl, win);
    curve.k.push_back(k);
    curve.eta.push_back(rr.report.eta_abs);
    curve.ledger_dev.push_back(ledger_deviation(rr.report.series));
  }
  curve.fit = fit_gaussian_suppression(curve.k, curve.eta);
  return curve;
}

MismatchCurve mismatch_emission(const SimParams& pr, const SignalSpec& sig,
                                const ControlSpec& ctl, const Window& win,
                                const std::vector<double>& k_per_L, double emission_factor) {
  const RunResult abs = run_absorption(pr, sig, ctl, win);
  const SimState stored = settle_storage(abs.state);
  const double loss0 = stored.loss_accum, leak0 = stored.leaked_photons;

  MismatchCurve curve;
  for (double k : k_per_L) {
    const Window em_win{stored.t, stored.t + emission_factor * win.duration()};
    const ControlSpec ctl_em = emission_control(ctl, em_win, pr.c_tilde, pr.grid.x_extent);
    const EmissionResult er = run_emission(pr, stored, ctl_em, 0.0, k, em_win);
    curve.k.push_back(k);
    curve.eta.push_back(er.report.eta_em);
    std::vector<SeriesRow> merged = abs.report.series;
    for (SeriesRow row : er.report.series) {
      row.loss += loss0;
      row.leaked += leak0;
      merged.push_back(row);
    }
    curve.ledger_dev.push_back(ledger_deviation(merged));
  }
  curve.fit = fit_gaussian_suppression(curve.k, curve.eta);
  return curve;
}

}
