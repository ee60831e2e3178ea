#include "router/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace router {

namespace {

// cloud cells [i0, i1) of row j; computed once per run
struct Chord {
  int j;
  int i0;
  int i1;
};

std::vector<Chord> cloud_chords(const GridSpec& g, const DensityProfile& den) {
  std::vector<Chord> out;
  for (int j = 0; j < g.ny; ++j) {
    const double y = g.y(j);
    int i0 = -1, i1 = -1;
    for (int i = 0; i < g.nx; ++i) {
      if (den.inside(g.x(i), y)) {
        if (i0 < 0) i0 = i;
        i1 = i + 1;
      }
    }
    if (i0 >= 0) out.push_back({j, i0, i1});
  }
  return out;
}

inline cplx damping(const SimParams& pr) {
  // test hook drops the -P term, leaving the detuning rotation only
  return pr.decay_disabled ? cplx(0.0, -pr.delta_tilde) : cplx(-1.0, -pr.delta_tilde);
}

// Gaussian tails beyond this many e-widths are treated as exactly zero, both
// when injecting and when accounting for the not-yet-injected reservoir.
constexpr double tail_cut = 6.5;

// classic RK4 on the local linear cell system; the loss integral
// d(loss)/dt = 2|P|^2 rides along with the same stages. lsum accumulates
// (dt/6)(|p1|^2 + 2|p2|^2 + 2|p3|^2 + |p4|^2); the caller owns the factor 2
// and the quadrature weights.
inline void rk4_cell(cplx& E, cplx& P, cplx& S, double& lsum,
                     double g, cplx a, double dt,
                     double om1, double om2, double om3) {
  auto de = [g](const cplx& p) { return cplx(-g * p.imag(), g * p.real()); };
  auto dp = [&](const cplx& e, const cplx& p, const cplx& s, double om) {
    return a * p + cplx(-om * s.imag(), om * s.real()) + cplx(-g * e.imag(), g * e.real());
  };
  auto ds = [](const cplx& p, double om) { return cplx(-om * p.imag(), om * p.real()); };

  const cplx e1 = E, p1 = P, s1 = S;
  const cplx k1e = de(p1), k1p = dp(e1, p1, s1, om1), k1s = ds(p1, om1);
  const double h2 = 0.5 * dt;
  const cplx e2 = e1 + h2 * k1e, p2 = p1 + h2 * k1p, s2 = s1 + h2 * k1s;
  const cplx k2e = de(p2), k2p = dp(e2, p2, s2, om2), k2s = ds(p2, om2);
  const cplx e3 = e1 + h2 * k2e, p3 = p1 + h2 * k2p, s3 = s1 + h2 * k2s;
  const cplx k3e = de(p3), k3p = dp(e3, p3, s3, om2), k3s = ds(p3, om2);
  const cplx e4 = e1 + dt * k3e, p4 = p1 + dt * k3p, s4 = s1 + dt * k3s;
  const cplx k4e = de(p4), k4p = dp(e4, p4, s4, om3), k4s = ds(p4, om3);
  const double w = dt / 6.0;
  E = e1 + w * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
  P = p1 + w * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  S = s1 + w * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
  lsum += w * (std::norm(p1) + 2.0 * std::norm(p2) + 2.0 * std::norm(p3) + std::norm(p4));
}

struct Engine {
  const SimParams& pr;
  const ControlSpec& ctl;
  const SignalSpec* sig;
  std::vector<Chord> chords;
  double qscale; // z_factor * dx * dy, shared by every norm
  cplx a;
  double ct, st_;

  Engine(const SimParams& p, const ControlSpec& c, const SignalSpec* s, double z_width)
      : pr(p), ctl(c), sig(s), chords(cloud_chords(p.grid, p.density)),
        qscale(z_width * std::sqrt(consts::pi / 2.0) * p.grid.dx() * p.grid.dy()),
        a(damping(p)), ct(std::cos(c.theta)), st_(std::sin(c.theta)) {}

  // largest |u_par| or |u_perp| offset of any cloud point from the center
  bool control_live(double t, double dt) const {
    if (ctl.amplitude == 0.0) return false;
    const double r = pr.density.radius;
    const double ucp = -(-ctl.x0) * st_ + (-ctl.y0) * ct; // u_perp at the origin
    if (std::abs(ucp) - r > tail_cut * ctl.w_perp) return false;
    const double uc0 = (-ctl.x0) * ct + (-ctl.y0) * st_ - pr.c_tilde * (t - ctl.t0);
    const double slack = r + pr.c_tilde * dt;
    return std::abs(uc0) - slack <= tail_cut * ctl.w_par;
  }

  void advance(SimState& st) {
    const GridSpec& g = pr.grid;
    const int nx = g.nx;
    const double dt = pr.dt();
    const double t_new = st.t + dt;

    // exact one-cell shift; the departing column is the boundary outflow
    double outsum = 0.0, insum = 0.0;
    const double x_in = g.x(0);
    bool col_live = false;
    if (sig) {
      const double u = x_in - pr.c_tilde * (t_new - sig->arrival_t);
      col_live = std::abs(u) <= tail_cut * sig->w_par;
    }
    for (int j = 0; j < g.ny; ++j) {
      cplx* row = st.E.v.data() + static_cast<size_t>(j) * nx;
      outsum += std::norm(row[nx - 1]);
      std::memmove(row + 1, row, (nx - 1) * sizeof(cplx));
      cplx v{0.0, 0.0};
      if (col_live) {
        const double y = g.y(j);
        if (std::abs(y) <= tail_cut * sig->w_perp)
          v = signal_value(*sig, pr.c_tilde, x_in, y, t_new);
      }
      row[0] = v;
      insum += std::norm(v);
    }
    st.leaked_photons += qscale * outsum;
    st.reservoir -= qscale * insum;

    // pointwise ODE over the cloud, control sampled at t, t+dt/2, t+dt
    const bool live = control_live(st.t, dt);
    const double gt = pr.g_tilde;
    const double w1i = 1.0 / (ctl.w_par * ctl.w_par);
    const double w2i = 1.0 / (ctl.w_perp * ctl.w_perp);
    const double amp = ctl.amplitude;
    const double base = -ctl.x0 * ct - ctl.y0 * st_ + pr.c_tilde * ctl.t0;
    const double r1 = base - pr.c_tilde * st.t;
    const double r2 = base - pr.c_tilde * (st.t + 0.5 * dt);
    const double r3 = base - pr.c_tilde * t_new;
    const double pbase = ctl.x0 * st_ - ctl.y0 * ct;
    double lsum = 0.0;
    for (const Chord& chd : chords) {
      const double y = g.y(chd.j);
      cplx* Er = st.E.v.data() + static_cast<size_t>(chd.j) * nx;
      cplx* Pr = st.P.v.data() + static_cast<size_t>(chd.j) * nx;
      cplx* Sr = st.S.v.data() + static_cast<size_t>(chd.j) * nx;
      const double row1 = y * st_ + r1;
      const double row2 = y * st_ + r2;
      const double row3 = y * st_ + r3;
      const double rowp = y * ct + pbase;
      for (int i = chd.i0; i < chd.i1; ++i) {
        double om1 = 0.0, om2 = 0.0, om3 = 0.0;
        if (live) {
          const double x = g.x(i);
          const double up = rowp - x * st_;
          const double q = up * up * w2i;
          const double u1 = x * ct + row1;
          const double u2 = x * ct + row2;
          const double u3 = x * ct + row3;
          om1 = amp * std::exp(-u1 * u1 * w1i - q);
          om2 = amp * std::exp(-u2 * u2 * w1i - q);
          om3 = amp * std::exp(-u3 * u3 * w1i - q);
        }
        rk4_cell(Er[i], Pr[i], Sr[i], lsum, gt, a, dt, om1, om2, om3);
      }
    }
    if (!pr.decay_disabled) st.loss_accum += 2.0 * qscale * lsum;
    st.t = t_new;
  }
};

void require_domain(const SimParams& pr) {
  if (pr.grid.x_extent * 0.5 <= pr.density.radius ||
      pr.grid.y_extent * 0.5 <= pr.density.radius)
    throw std::invalid_argument("solver: grid does not cover the cloud");
}

SeriesRow sample_row(const SimState& st) {
  SeriesRow r;
  r.t = st.t;
  r.n_ph = photon_number(st.E) + st.reservoir;
  const Excitations ex = excitation_numbers(st.S, st.P);
  r.n_s = ex.n_s;
  r.n_e = ex.n_e;
  r.loss = st.loss_accum;
  r.leaked = st.leaked_photons;
  if (!std::isfinite(r.n_ph + r.n_e + r.n_s + r.loss + r.leaked))
    throw NumericalError("solver: field norms are not finite at t = " + std::to_string(st.t));
  return r;
}

// photon norm of the signal column entering at time t, matching the
// injection cutoffs
double column_norm(const SignalSpec& s, double c_tilde, const GridSpec& g,
                   double qscale, double sy, double t) {
  const double u = g.x(0) - c_tilde * (t - s.arrival_t);
  if (std::abs(u) > tail_cut * s.w_par) return 0.0;
  const double A = s.amplitude();
  return qscale * sy * A * A * std::exp(-2.0 * u * u / (s.w_par * s.w_par));
}

double row_gaussian_sum(const SignalSpec& s, const GridSpec& g) {
  double sy = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const double y = g.y(j);
    if (std::abs(y) <= tail_cut * s.w_perp)
      sy += std::exp(-2.0 * y * y / (s.w_perp * s.w_perp));
  }
  return sy;
}

} // namespace

double photon_number(const ComplexField& e) { return norm_quadrature(e); }

Excitations excitation_numbers(const ComplexField& s, const ComplexField& p) {
  return {norm_quadrature(s), norm_quadrature(p)};
}

SimState fresh_state(const SimParams& pr, double z_width, double t0) {
  SimState st;
  st.t = t0;
  st.E = ComplexField(pr.grid, z_width);
  st.P = ComplexField(pr.grid, z_width);
  st.S = ComplexField(pr.grid, z_width);
  return st;
}

void step(SimState& st, const SimParams& pr, const ControlSpec& ctl, const SignalSpec* signal) {
  require_domain(pr);
  Engine en(pr, ctl, signal, st.E.z_width);
  en.advance(st);
}

Window default_absorption_window(const SimParams& pr, const SignalSpec& s,
                                 double margin_widths) {
  const double half = 0.5 * pr.grid.x_extent;
  const double m = margin_widths * s.w_par;
  return {s.arrival_t - (half + m) / pr.c_tilde, s.arrival_t + (half + m) / pr.c_tilde};
}

RunResult run_absorption(const SimParams& pr, const SignalSpec& sig, const ControlSpec& ctl,
                         const Window& win, int sample_stride) {
  require_domain(pr);
  if (!(win.duration() > 0.0))
    throw std::invalid_argument("run_absorption: empty window");

  const double dt = pr.dt();
  const long nsteps = std::max(1L, std::lround(win.duration() / dt));
  const long stride = sample_stride > 0 ? sample_stride : std::max(1L, nsteps / 400);

  RunResult rr;
  rr.state = fresh_state(pr, sig.w_perp, win.t_start);
  Engine en(pr, ctl, &sig, sig.w_perp);

  const double sy = row_gaussian_sum(sig, pr.grid);
  double res = 0.0;
  for (long n = 1; n <= nsteps; ++n)
    res += column_norm(sig, pr.c_tilde, pr.grid, en.qscale, sy, win.t_start + n * dt);
  rr.state.reservoir = res;

  rr.report.series.push_back(sample_row(rr.state));
  for (long n = 1; n <= nsteps; ++n) {
    en.advance(rr.state);
    if (n % stride == 0 || n == nsteps)
      rr.report.series.push_back(sample_row(rr.state));
  }

  rr.report.eta_abs = rr.report.series.back().n_s;
  const double x_peak = pr.c_tilde * (rr.state.t - sig.arrival_t);
  if (x_peak < 0.5 * pr.grid.x_extent + 2.0 * sig.w_par)
    rr.report.warnings.push_back("absorption window ends before the signal has left the domain");
  return rr;
}

ComplexField rotate_to_frame(const ComplexField& f, double phi, const DensityProfile& den) {
  if (phi == 0.0) return f;
  const GridSpec& g = f.grid;
  ComplexField out(g, f.z_width);
  const double c = std::cos(phi), s = std::sin(phi);
  const double dx = g.dx(), dy = g.dy();
  double src_sum = 0.0;
  for (const cplx& z : f.v) src_sum += std::norm(z);
  double dst_sum = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const double y = g.y(j);
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x(i);
      if (!den.inside(x, y)) continue;
      // sample the source at R(+phi) r
      const double xs = c * x - s * y;
      const double ys = s * x + c * y;
      const double fi = xs / dx + 0.5 * g.nx - 0.5;
      const double fj = ys / dy + 0.5 * g.ny - 0.5;
      const int i0 = static_cast<int>(std::floor(fi));
      const int j0 = static_cast<int>(std::floor(fj));
      const double wx = fi - i0, wy = fj - j0;
      auto src = [&](int ii, int jj) -> cplx {
        if (ii < 0 || ii >= g.nx || jj < 0 || jj >= g.ny) return {0.0, 0.0};
        return f.at(ii, jj);
      };
      const cplx z = (1.0 - wx) * (1.0 - wy) * src(i0, j0) + wx * (1.0 - wy) * src(i0 + 1, j0) +
                     (1.0 - wx) * wy * src(i0, j0 + 1) + wx * wy * src(i0 + 1, j0 + 1);
      out.at(i, j) = z;
      dst_sum += std::norm(z);
    }
  }
  if (src_sum > 0.0) {
    if (dst_sum == 0.0)
      throw NumericalError("rotate_to_frame: rotation lost the entire field");
    const double scale = std::sqrt(src_sum / dst_sum);
    for (cplx& z : out.v) z *= scale;
  }
  return out;
}

EmissionResult run_emission(const SimParams& pr, const SimState& stored, const ControlSpec& ctl,
                            double phi, double k_mis, const Window& win, int sample_stride) {
  require_domain(pr);
  if (!(win.duration() > 0.0))
    throw std::invalid_argument("run_emission: empty window");
  const double n_s0 = norm_quadrature(stored.S);
  if (!std::isfinite(n_s0))
    throw NumericalError("run_emission: non-finite stored spin wave");
  if (!(n_s0 > 0.0))
    throw std::invalid_argument("run_emission: no stored spin wave");

  EmissionResult er;
  er.state = fresh_state(pr, stored.S.z_width, win.t_start);
  er.state.S = rotate_to_frame(stored.S, phi, pr.density);
  if (k_mis != 0.0) {
    const GridSpec& g = pr.grid;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        er.state.S.at(i, j) *= std::polar(1.0, k_mis * g.x(i));
  }

  const ControlSpec local = control_in_rotated_frame(ctl, phi);
  Engine en(pr, local, nullptr, stored.S.z_width);

  const double dt = pr.dt();
  const long nsteps = std::max(1L, std::lround(win.duration() / dt));
  const long stride = sample_stride > 0 ? sample_stride : std::max(1L, nsteps / 400);

  double peak = -1.0;
  auto consider_snapshot = [&](const SeriesRow& row) {
    if (row.n_ph > peak) {
      peak = row.n_ph;
      er.snapshot = er.state.E;
    }
  };
  SeriesRow first = sample_row(er.state);
  er.report.series.push_back(first);
  consider_snapshot(first);
  for (long n = 1; n <= nsteps; ++n) {
    en.advance(er.state);
    if (n % stride == 0 || n == nsteps) {
      const SeriesRow row = sample_row(er.state);
      er.report.series.push_back(row);
      consider_snapshot(row);
    }
  }

  er.report.eta_em = er.state.leaked_photons / n_s0;
  const double left_over = photon_number(er.state.E);
  if (left_over > 1e-4 * n_s0)
    er.report.warnings.push_back("emission window ends with light still in the domain");
  return er;
}

SimState settle_storage(const SimState& end_of_absorption) {
  SimState st = end_of_absorption;
  st.leaked_photons += photon_number(st.E) + st.reservoir;
  st.reservoir = 0.0;
  std::fill(st.E.v.begin(), st.E.v.end(), cplx{0.0, 0.0});
  st.loss_accum += norm_quadrature(st.P);
  std::fill(st.P.v.begin(), st.P.v.end(), cplx{0.0, 0.0});
  return st;
}

FullRunResult run_full(const SimParams& pr, const SignalSpec& sig, const ControlSpec& ctl_abs,
                       const PhaseRamp& manipulation, const ControlSpec& ctl_em,
                       double phi_nominal, const FullWindows& win) {
  RunResult abs = run_absorption(pr, sig, ctl_abs, win.absorption);

  FullRunResult fr;
  fr.stored = abs.state;

  // idealized storage: the leftover light leaves, the polarisation decays out
  SimState st = settle_storage(abs.state);

  // carrier bookkeeping: the full manipulation lives in the spin-wave carrier,
  // only the off-shell remainder is put on the grid
  const WaveGeometry wg = geometry_for(pr.units, ctl_abs.theta);
  const vec2 kap = kappa_of(wg);
  const vec2 kap2{kap[0] + manipulation.delta[0], kap[1] + manipulation.delta[1]};
  const WaveGeometry wge = geometry_for(pr.units, ctl_em.theta);
  const EmittedWave ew = emitted_wavevector(kap2, wge.k_c(), wg.k_s_mag);
  fr.phi_actual = ew.phi;
  fr.k_mis = ew.k_mis * pr.units.cloud_length;

  const Window em_win{st.t, st.t + win.emission_factor * win.absorption.duration()};
  EmissionResult em = run_emission(pr, st, ctl_em, fr.phi_actual, fr.k_mis, em_win);

  fr.report.eta_abs = abs.report.eta_abs;
  fr.report.eta_em = em.report.eta_em;
  fr.report.eta_total = fr.report.eta_abs * fr.report.eta_em;
  fr.report.warnings = abs.report.warnings;
  for (const auto& w : em.report.warnings) fr.report.warnings.push_back(w);
  if (std::abs(fr.phi_actual - phi_nominal) > 1e-6)
    fr.report.warnings.push_back("manipulation ramp does not aim at the nominal angle");

  fr.report.series = abs.report.series;
  const double loss0 = st.loss_accum, leak0 = st.leaked_photons;
  for (SeriesRow row : em.report.series) {
    row.loss += loss0;
    row.leaked += leak0;
    fr.report.series.push_back(row);
  }
  fr.final = em.state;
  fr.final.loss_accum += loss0;
  fr.final.leaked_photons += leak0;
  fr.snapshot = em.snapshot;
  return fr;
}

}
