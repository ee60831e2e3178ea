#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "router/pulses.hpp"

#include <cmath>
#include <stdexcept>

using namespace router;

namespace {

// independent restatement of the normalization: the three Gaussian axes give
// A^2 w_par w_perp^2 (pi/2)^(3/2) = <N_ph>
double mean_photons(const SignalSpec& s) {
  const double a = s.amplitude();
  return a * a * s.w_par * s.w_perp * s.w_perp * std::pow(consts::pi / 2.0, 1.5);
}

} // namespace

TEST_CASE("signal amplitude fixes the mean photon number at one") {
  SignalSpec s;
  s.w_par = 0.3;
  s.w_perp = 0.2;
  CHECK(mean_photons(s) == doctest::Approx(1.0).epsilon(1e-14));
  s.w_par = 100.0;
  s.w_perp = 0.2;
  CHECK(mean_photons(s) == doctest::Approx(1.0).epsilon(1e-14));

  SignalSpec bad;
  bad.w_par = 0.0;
  CHECK_THROWS_AS(bad.amplitude(), std::invalid_argument);
}

TEST_CASE("signal envelope quadrature on the grid") {
  SignalSpec s;
  s.w_par = 0.3;
  s.w_perp = 0.2;
  s.arrival_t = 0.0;
  GridSpec g;
  g.nx = 256;
  g.ny = 256;
  const ComplexField f = signal_envelope(s, g, 850.0, 0.0);
  CHECK(f.z_width == s.w_perp);
  CHECK(norm_quadrature(f) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("signal envelope is even in y") {
  SignalSpec s;
  s.w_par = 0.4;
  s.w_perp = 0.3;
  GridSpec g;
  g.nx = 32;
  g.ny = 32;
  const ComplexField f = signal_envelope(s, g, 850.0, 1e-4);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) CHECK(f.at(i, j) == f.at(i, g.ny - 1 - j));
}

TEST_CASE("carrier mismatch rides the free-streaming coordinate") {
  SignalSpec s;
  s.w_par = 0.5;
  s.w_perp = 0.3;
  s.arrival_t = 0.02;
  s.k_mis = 2.5;
  const double c = 850.0;
  for (double t : {0.0199, 0.02, 0.0201}) {
    for (double x : {-0.3, 0.0, 0.4}) {
      const double u = x - c * (t - s.arrival_t);
      const cplx v = signal_value(s, c, x, 0.1, t);
      const cplx expect = std::abs(v) * std::exp(cplx(0.0, s.k_mis * u));
      CHECK(std::abs(v - expect) <= 1e-12 * (1.0 + std::abs(v)));
    }
  }
  s.k_mis = 0.0;
  CHECK(signal_value(s, c, 0.3, 0.1, 0.02).imag() == 0.0);
}

TEST_CASE("control peak sits at the waist at t0") {
  ControlSpec c;
  c.amplitude = 7.0;
  c.w_par = 0.8;
  c.w_perp = 0.4;
  c.theta = 0.0;
  c.t0 = 0.3;
  c.x0 = 0.2;
  c.y0 = -0.1;
  CHECK(control_value(c, 850.0, c.x0, c.y0, c.t0) == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(control_value(c, 850.0, c.x0 + 0.8, c.y0, c.t0) ==
        doctest::Approx(7.0 * std::exp(-1.0)).epsilon(1e-12));
  CHECK(control_value(c, 850.0, c.x0, c.y0 + 0.4, c.t0) ==
        doctest::Approx(7.0 * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("control propagates along its axis at c") {
  ControlSpec c;
  c.amplitude = 3.0;
  c.w_par = 0.4;
  c.w_perp = 0.3;
  c.theta = consts::pi / 2.0;
  c.t0 = 0.0;
  c.x0 = 0.0;
  c.y0 = -1.0;
  const double ct = 850.0;

  // analytic: the peak point moves along +y at speed c
  const double dtm = 7e-4;
  CHECK(control_value(c, ct, 0.0, -1.0 + ct * dtm, dtm) == doctest::Approx(3.0).epsilon(1e-12));

  // grid argmax over two time samples
  GridSpec g;
  g.nx = 64;
  g.ny = 64;
  auto argmax = [&](const ComplexField& f, int& bi, int& bj) {
    double best = -1.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        if (std::abs(f.at(i, j)) > best) {
          best = std::abs(f.at(i, j));
          bi = i;
          bj = j;
        }
  };
  const double dt4 = 4.0 * g.dy() / ct; // four cells of travel
  int i0 = -1, j0 = -1, i1 = -1, j1 = -1;
  const ComplexField f0 = control_field(c, g, ct, 0.0);
  const ComplexField f1 = control_field(c, g, ct, dt4);
  argmax(f0, i0, j0);
  argmax(f1, i1, j1);
  CHECK(i1 == i0);
  CHECK(j1 == j0 + 4);
}

TEST_CASE("zero-amplitude control vanishes identically") {
  ControlSpec c;
  c.amplitude = 0.0;
  GridSpec g;
  g.nx = 16;
  g.ny = 16;
  const ComplexField f = control_field(c, g, 850.0, 0.1);
  for (const cplx& v : f.v) CHECK(v == cplx{0.0, 0.0});
  CHECK(control_value(c, 850.0, 0.3, -0.2, 5.0) == 0.0);
}

TEST_CASE("rotated-frame control reproduces the beam pointwise") {
  ControlSpec c;
  c.amplitude = 4.0;
  c.w_par = 0.7;
  c.w_perp = 0.25;
  c.theta = 0.4;
  c.t0 = 0.01;
  c.x0 = 0.15;
  c.y0 = -0.2;
  const double ct = 850.0;

  for (double phi : {0.0, 0.3, consts::pi / 2.0, consts::pi, -0.8}) {
    const ControlSpec r = control_in_rotated_frame(c, phi);
    CHECK(r.theta == doctest::Approx(c.theta - phi).epsilon(1e-15));
    const double cp = std::cos(phi), sp = std::sin(phi);
    for (double t : {0.0, 0.0102}) {
      for (auto [x, y] : {std::pair{0.1, 0.2}, {-0.3, 0.05}, {0.0, -0.4}}) {
        const double xr = cp * x + sp * y; // R(-phi) r
        const double yr = -sp * x + cp * y;
        CHECK(control_value(r, ct, xr, yr, t) ==
              doctest::Approx(control_value(c, ct, x, y, t)).epsilon(1e-12));
      }
    }
  }
}
