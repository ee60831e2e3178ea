#pragma once
#include "router/solver.hpp"

#include <functional>
#include <string>

namespace router {

// Derivative-free maximization over the five control parameters
// (amplitude, w_par, w_perp, t0, x0). theta and y0 ride along unchanged from
// `base`. Fully deterministic for a given (seed, budget): simplex descent in
// sine-transformed bound coordinates, restarted from a seeded low-discrepancy
// sample of the box. Collapsing a bound to a point fixes that parameter.
struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

struct OptProblem {
  std::function<double(const ControlSpec&)> objective;
  Bounds amplitude{0.0, 200.0};
  Bounds w_par{0.01, 300.0};
  Bounds w_perp{0.01, 300.0};
  Bounds t0{0.0, 0.0};
  Bounds x0{0.0, 0.0};
  ControlSpec base;
  int budget = 150;
  unsigned seed = 1;
  std::vector<ControlSpec> hints; // warm starts, tried before the sampled ones
};

struct TracePoint {
  int index = 0;
  double value = 0.0;
};

struct OptResult {
  ControlSpec best;
  double best_value = 0.0;
  std::vector<TracePoint> trace; // one entry per objective evaluation
  int evaluations_used = 0;
};

OptResult optimize(const OptProblem& problem);

// Absorption-efficiency landscape over optical depth and control angle.
// Each point re-optimizes, warm-started from its already-solved neighbors
// (previous angle at the same depth, same angle at the previous depth).
struct SweepPoint {
  double d = 0.0;
  double theta = 0.0;
  double eta = 0.0;
  ControlSpec best;
};

std::vector<SweepPoint> sweep_eta_abs(const std::vector<double>& depths,
                                      const std::vector<double>& thetas,
                                      const PhysicalUnits& units, const GridSpec& grid,
                                      double delta_tilde, const SignalSpec& sig,
                                      int budget, unsigned seed);

// One-parameter slice through the optimum: `parameter` is one of amplitude,
// w_par, w_perp, t0, x0; the value runs over best*(1 +- span), or +-span
// absolutely if the center is zero. Returns exactly `samples` points.
struct ScanPoint {
  double value = 0.0;
  double eta = 0.0;
};

std::vector<ScanPoint> robustness_scan(const std::function<double(const ControlSpec&)>& objective,
                                       const ControlSpec& best, const std::string& parameter,
                                       double span, int samples);

}
