#include "router/optimizer.hpp"

#include "router/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace router {

namespace {

using Z = std::array<double, 5>;

constexpr double inf = std::numeric_limits<double>::infinity();

// box mapping x = lo + (hi-lo)(1+sin z)/2 keeps the simplex unconstrained;
// a collapsed bound pins the parameter at lo
double map1(double z, const Bounds& b) {
  return b.lo + (b.hi - b.lo) * 0.5 * (1.0 + std::sin(z));
}

double unmap1(double x, const Bounds& b) {
  if (!(b.hi > b.lo)) return 0.0;
  const double u = std::clamp(2.0 * (x - b.lo) / (b.hi - b.lo) - 1.0, -1.0, 1.0);
  return std::asin(u);
}

ControlSpec from_z(const OptProblem& p, const Z& z) {
  ControlSpec c = p.base;
  c.amplitude = map1(z[0], p.amplitude);
  c.w_par = map1(z[1], p.w_par);
  c.w_perp = map1(z[2], p.w_perp);
  c.t0 = map1(z[3], p.t0);
  c.x0 = map1(z[4], p.x0);
  return c;
}

Z to_z(const OptProblem& p, const ControlSpec& c) {
  return {unmap1(c.amplitude, p.amplitude), unmap1(c.w_par, p.w_par),
          unmap1(c.w_perp, p.w_perp), unmap1(c.t0, p.t0), unmap1(c.x0, p.x0)};
}

double halton(long index, int base) {
  double f = 1.0, r = 0.0;
  for (long i = index; i > 0; i /= base) {
    f /= base;
    r += f * static_cast<double>(i % base);
  }
  return r;
}

struct Evaluator {
  const OptProblem& pr;
  int used = 0;
  bool any_finite = false;
  std::vector<TracePoint> trace;
  double best_val = -inf;
  ControlSpec best;

  bool exhausted() const { return used >= pr.budget; }

  // value to minimize; non-finite objectives are recorded and repelled
  double operator()(const Z& z) {
    const ControlSpec c = from_z(pr, z);
    const double f = pr.objective(c);
    trace.push_back({used, std::isfinite(f) ? f : -inf});
    ++used;
    if (!std::isfinite(f)) return inf;
    any_finite = true;
    if (f > best_val) {
      best_val = f;
      best = c;
    }
    return -f;
  }
};

// simplex spans only the live coordinates; collapsed bounds stay constants
void nelder_mead(Evaluator& ev, const std::vector<int>& live, const Z& z0, double step,
                 int stall_limit, int eval_cap) {
  const int n = static_cast<int>(live.size());
  const int cap = ev.used + eval_cap;
  auto done = [&] { return ev.exhausted() || ev.used >= cap; };
  std::vector<Z> x(n + 1);
  std::vector<double> f(n + 1);
  x[0] = z0;
  for (int k = 1; k <= n; ++k) {
    x[k] = z0;
    x[k][live[k - 1]] += step;
  }
  for (int k = 0; k <= n; ++k) {
    if (done()) return;
    f[k] = ev(x[k]);
  }

  int stall = 0;
  double marker = inf; // spread at the last stall reset
  while (!done()) {
    int ib = 0, iw = 0;
    for (int k = 1; k <= n; ++k) {
      if (f[k] < f[ib]) ib = k;
      if (f[k] > f[iw]) iw = k;
    }
    double second = -inf;
    for (int k = 0; k <= n; ++k)
      if (k != iw) second = std::max(second, f[k]);

    // progress means the simplex keeps contracting in value spread; a best
    // vertex plateau is normal while the rest catch up
    const double spread = f[iw] - f[ib];
    if (spread < 0.9 * marker) {
      marker = spread;
      stall = 0;
    } else if (++stall >= stall_limit) {
      return;
    }
    if (spread <= 1e-10 * (1.0 + std::abs(f[ib]))) return;
    double extent = 0.0;
    for (int k = 0; k <= n; ++k)
      for (int m : live) extent = std::max(extent, std::abs(x[k][m] - x[ib][m]));
    if (extent <= 1e-7) return; // fully contracted

    Z cen = z0;
    for (int m : live) cen[m] = 0.0;
    for (int k = 0; k <= n; ++k) {
      if (k == iw) continue;
      for (int m : live) cen[m] += x[k][m] / n;
    }
    auto blend = [&](double a) { // cen + a (cen - x[iw])
      Z p = cen;
      for (int m : live) p[m] = cen[m] + a * (cen[m] - x[iw][m]);
      return p;
    };

    const Z xr = blend(1.0);
    if (done()) return;
    const double fr = ev(xr);
    if (fr < f[ib]) {
      const Z xe = blend(2.0);
      if (done()) {
        x[iw] = xr;
        f[iw] = fr;
        return;
      }
      const double fe = ev(xe);
      if (fe < fr) {
        x[iw] = xe;
        f[iw] = fe;
      } else {
        x[iw] = xr;
        f[iw] = fr;
      }
    } else if (fr < second) {
      x[iw] = xr;
      f[iw] = fr;
    } else {
      const bool outside = fr < f[iw];
      const Z xc = blend(outside ? 0.5 : -0.5);
      if (done()) return;
      const double fc = ev(xc);
      if (fc < (outside ? fr : f[iw])) {
        x[iw] = xc;
        f[iw] = fc;
      } else {
        for (int k = 0; k <= n; ++k) {
          if (k == ib) continue;
          for (int m : live) x[k][m] = x[ib][m] + 0.5 * (x[k][m] - x[ib][m]);
          if (done()) return;
          f[k] = ev(x[k]);
        }
      }
    }
  }
}

} // namespace

OptResult optimize(const OptProblem& p) {
  if (!p.objective)
    throw std::invalid_argument("optimize: no objective");
  if (p.budget < 6)
    throw std::invalid_argument("optimize: budget must cover dimension+1 evaluations");
  for (const Bounds* b : {&p.amplitude, &p.w_par, &p.w_perp, &p.t0, &p.x0})
    if (b->hi < b->lo)
      throw std::invalid_argument("optimize: inverted bounds");

  Evaluator ev{p, 0, false, {}, -inf, {}};
  std::mt19937 rng(p.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Z rot;
  for (double& r : rot) r = uni(rng);

  std::vector<int> live;
  {
    const Bounds* bs[5] = {&p.amplitude, &p.w_par, &p.w_perp, &p.t0, &p.x0};
    for (int k = 0; k < 5; ++k)
      if (bs[k]->hi > bs[k]->lo) live.push_back(k);
  }
  if (live.empty()) {
    ev(Z{});
    if (!ev.any_finite)
      throw std::runtime_error("optimize: objective never returned a finite value");
    OptResult r;
    r.best = ev.best;
    r.best_value = ev.best_val;
    r.trace = std::move(ev.trace);
    r.evaluations_used = ev.used;
    return r;
  }

  const int primes[5] = {2, 3, 5, 7, 11};
  // blind restarts are lottery tickets and get a bounded spend; runs seeded
  // from a hint or from the incumbent may use whatever budget remains
  const int explore_cap = 60 + 10 * static_cast<int>(live.size());
  long h = 0;
  size_t next_hint = 0;
  int shrink = 0;
  bool polish = false;
  while (!ev.exhausted()) {
    Z z0;
    double step = 0.3;
    int eval_cap = p.budget;
    if (polish && ev.any_finite) {
      // fresh simplex around the incumbent; the box transform flattens near
      // the bound folds and a restarted simplex walks out of them
      z0 = to_z(p, ev.best);
      step = std::max(0.3 * std::pow(1.0 / 3.0, shrink), 1e-3);
      ++shrink;
    } else if (next_hint < p.hints.size()) {
      z0 = to_z(p, p.hints[next_hint++]);
    } else {
      ++h;
      eval_cap = explore_cap;
      for (int k = 0; k < 5; ++k) {
        double u = halton(h, primes[k]) + rot[k];
        u -= std::floor(u);
        u = 0.05 + 0.9 * u; // stay off the hard box edges
        z0[k] = std::asin(2.0 * u - 1.0);
      }
    }
    const double before = ev.best_val;
    nelder_mead(ev, live, z0, step, 40, eval_cap);
    const bool improved =
        ev.any_finite &&
        (!std::isfinite(before) || ev.best_val > before + 1e-9 * (1.0 + std::abs(before)));
    if (polish) {
      if (!improved && step <= 1.0009e-3) polish = false; // ladder bottomed out
    } else if (improved) {
      polish = true;
      shrink = std::max(1, shrink - 2); // partially re-widen for the new basin
    }
  }
  if (!ev.any_finite)
    throw std::runtime_error("optimize: objective never returned a finite value");

  OptResult r;
  r.best = ev.best;
  r.best_value = ev.best_val;
  r.trace = std::move(ev.trace);
  r.evaluations_used = ev.used;
  return r;
}

std::vector<SweepPoint> sweep_eta_abs(const std::vector<double>& depths,
                                      const std::vector<double>& thetas,
                                      const PhysicalUnits& units, const GridSpec& grid,
                                      double delta_tilde, const SignalSpec& sig,
                                      int budget, unsigned seed) {
  std::vector<SweepPoint> out;
  std::vector<std::vector<ControlSpec>> bests(depths.size(),
                                              std::vector<ControlSpec>(thetas.size()));
  for (size_t di = 0; di < depths.size(); ++di) {
    for (size_t ti = 0; ti < thetas.size(); ++ti) {
      const SimParams pr = params_for_depth(units, grid, depths[di], delta_tilde);
      const Window win = default_absorption_window(pr, sig);
      OptProblem prob = absorption_problem(pr, sig, thetas[ti], win, budget,
                                           seed + static_cast<unsigned>(97 * di + ti));
      // solved neighbors are better guesses than the canned starting point
      if (di > 0) prob.hints.insert(prob.hints.begin(), bests[di - 1][ti]);
      if (ti > 0) prob.hints.insert(prob.hints.begin(), bests[di][ti - 1]);
      const OptResult r = optimize(prob);
      bests[di][ti] = r.best;
      out.push_back({depths[di], thetas[ti], r.best_value, r.best});
    }
  }
  return out;
}

std::vector<ScanPoint> robustness_scan(const std::function<double(const ControlSpec&)>& objective,
                                       const ControlSpec& best, const std::string& parameter,
                                       double span, int samples) {
  if (samples < 2)
    throw std::invalid_argument("robustness_scan: need at least two samples");
  double ControlSpec::* field = nullptr;
  if (parameter == "amplitude") field = &ControlSpec::amplitude;
  else if (parameter == "w_par") field = &ControlSpec::w_par;
  else if (parameter == "w_perp") field = &ControlSpec::w_perp;
  else if (parameter == "t0") field = &ControlSpec::t0;
  else if (parameter == "x0") field = &ControlSpec::x0;
  else throw std::invalid_argument("robustness_scan: unknown parameter " + parameter);

  const double center = best.*field;
  const double half = center != 0.0 ? std::abs(center) * span : span;
  std::vector<ScanPoint> out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double frac = 2.0 * k / (samples - 1.0) - 1.0;
    ControlSpec c = best;
    c.*field = center + half * frac;
    out.push_back({c.*field, objective(c)});
  }
  return out;
}

}
