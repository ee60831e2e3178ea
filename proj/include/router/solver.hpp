#pragma once
#include "router/phasematch.hpp"
#include "router/pulses.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace router {

// Raised when a run produces non-finite field norms; mapped to its own
// process exit code by the command line front end.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reduced envelope system in the frame of the current propagation axis,
// everything in cloud units and units of gamma:
//   (d/dt + c d/dx) E = i g P
//         d/dt P = -(1 + i Delta) P + i Omega S + i g n E
//         d/dt S = i Omega* P
// P and S carry the density factor and vanish identically outside the cloud.
struct SimState {
  double t = 0.0;
  ComplexField E, P, S;
  double loss_accum = 0.0;     // norm lost to spontaneous emission
  double leaked_photons = 0.0; // photon norm advected through the +x boundary
  double reservoir = 0.0;      // photon norm of the not-yet-injected pulse part
};

struct SeriesRow {
  double t = 0.0;
  double n_ph = 0.0; // photon number, reservoir included
  double n_e = 0.0;
  double n_s = 0.0;
  double loss = 0.0;
  double leaked = 0.0;
};

struct Window {
  double t_start = 0.0;
  double t_end = 0.0;
  double duration() const { return t_end - t_start; }
};

struct EfficiencyReport {
  double eta_abs = 0.0;
  double eta_em = 0.0;
  double eta_total = 0.0;
  std::vector<SeriesRow> series;
  std::vector<std::string> warnings;
};

double photon_number(const ComplexField& e);

struct Excitations {
  double n_s = 0.0;
  double n_e = 0.0;
};
Excitations excitation_numbers(const ComplexField& s, const ComplexField& p);

SimState fresh_state(const SimParams& pr, double z_width, double t0);

// One split step of size dt = dx/c: E advected by exactly one cell (inflow
// sampled from `signal` if given, zero otherwise), then the pointwise ODE over
// the cloud with the control sampled at substep times. Loss and boundary
// outflow accumulate on the state.
void step(SimState& st, const SimParams& pr, const ControlSpec& ctl, const SignalSpec* signal);

// Window that lets margin_widths e-widths of signal tail enter and leave.
Window default_absorption_window(const SimParams& pr, const SignalSpec& s,
                                 double margin_widths = 3.0);

struct RunResult {
  SimState state;
  EfficiencyReport report;
};

// Drives the signal through the cloud; eta_abs = N_s at window end.
RunResult run_absorption(const SimParams& pr, const SignalSpec& sig, const ControlSpec& ctl,
                         const Window& win, int sample_stride = 0);

// Emission restated on the axis of the redirected signal: the stored spin
// wave is rotated by -phi about the cloud center (bilinear resampling, then
// renormalized and clipped to the cloud: the frame change itself is unitary),
// the residual mismatch ramp exp(i k_mis x) is imprinted (k_mis in cloud
// units), and the control is re-expressed in the rotated frame.
// eta_em = photons through the outflow boundary / N_s at start.
struct EmissionResult {
  SimState state;
  EfficiencyReport report;
  ComplexField snapshot; // E at the sample with peak in-domain photon number
};

EmissionResult run_emission(const SimParams& pr, const SimState& stored, const ControlSpec& ctl,
                            double phi, double k_mis, const Window& win, int sample_stride = 0);

// Absorption, idealized storage (control off: P decays exactly, remaining
// light leaves), carrier manipulation, emission. The manipulation ramp is
// split analytically: the emission axis and residual off-shell mismatch come
// from the carrier bookkeeping (module phasematch), only the residual is
// imprinted on the grid. phi_nominal is echoed into the report.
struct FullWindows {
  Window absorption;
  double emission_factor = 3.0; // emission window length over absorption length
};

struct FullRunResult {
  EfficiencyReport report;
  SimState stored;   // end of absorption, before manipulation
  SimState final;    // end of emission
  ComplexField snapshot;
  double phi_actual = 0.0;
  double k_mis = 0.0; // cloud units, as imprinted
};

FullRunResult run_full(const SimParams& pr, const SignalSpec& sig, const ControlSpec& ctl_abs,
                       const PhaseRamp& manipulation, const ControlSpec& ctl_em,
                       double phi_nominal, const FullWindows& win);

// Rotate a field by -phi about the origin (bilinear), zero outside the cloud,
// rescaled to the source norm. Exposed for tests.
ComplexField rotate_to_frame(const ComplexField& f, double phi, const DensityProfile& density);

// End of absorption with the leftover light flushed into the leaked tally
// and the polarisation decayed into the loss tally; the ledger stays exact.
SimState settle_storage(const SimState& end_of_absorption);

}
