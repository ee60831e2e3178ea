#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "router/phasematch.hpp"

#include <cmath>
#include <stdexcept>

using namespace router;

TEST_CASE("stored wavevector from the absorption geometry") {
  const PhysicalUnits u = default_units();

  const WaveGeometry w0 = geometry_for(u, 0.0);
  const vec2 k0 = kappa_of(w0);
  // copropagating beams leave only the two-photon recoil omega_gs / c
  CHECK(mag(k0) == doctest::Approx(consts::omega_gs / consts::c_light).epsilon(1e-12));
  CHECK(mag(k0) == doctest::Approx(143.15).epsilon(1e-3));
  CHECK(k0[1] == 0.0);

  const WaveGeometry w9 = geometry_for(u, consts::pi / 2.0);
  const vec2 k9 = kappa_of(w9);
  CHECK(mag(k9) == doctest::Approx(std::hypot(w9.k_s_mag, w9.k_c_mag)).epsilon(1e-12));

  WaveGeometry eq{5.0, 5.0, 0.0};
  const vec2 ke = kappa_of(eq);
  CHECK(ke[0] == 0.0);
  CHECK(ke[1] == 0.0);
}

TEST_CASE("redirection wavevector stays on shell") {
  const double ks = 7.9e6;
  const vec2 z = delta_for_angle(0.0, ks);
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 0.0);

  const vec2 d1 = delta_for_angle(1e-3, ks);
  CHECK(d1[0] == doctest::Approx(-3.95).epsilon(1e-3));
  CHECK(d1[1] == doctest::Approx(7.9e3).epsilon(1e-3));

  const vec2 dpi = delta_for_angle(consts::pi, ks);
  CHECK(dpi[0] == doctest::Approx(-2.0 * ks).epsilon(1e-12));
  CHECK(mag(dpi) == doctest::Approx(2.0 * ks).epsilon(1e-12));

  for (double phi = -3.1; phi <= 3.1; phi += 0.37) {
    const vec2 d = delta_for_angle(phi, ks);
    const vec2 k{ks + d[0], d[1]};
    CHECK(mag(k) == doctest::Approx(ks).epsilon(1e-12));
  }
}

TEST_CASE("emitted wavevector bookkeeping") {
  const PhysicalUnits u = default_units();
  const WaveGeometry w = geometry_for(u, 0.0);
  const vec2 kap = kappa_of(w);
  const vec2 kc = w.k_c();

  // unmanipulated retrieval returns the original signal exactly
  const EmittedWave id = emitted_wavevector(kap, kc, w.k_s_mag);
  CHECK(id.k_mis == 0.0);
  CHECK(id.phi == 0.0);
  CHECK(id.k_s_new[0] == w.k_s_mag);

  // 90% of the quarter-turn ramp leaves the shell; oracle by plain vectors
  const vec2 d = delta_for_angle(consts::pi / 2.0, w.k_s_mag);
  const vec2 kap2{kap[0] + 0.9 * d[0], kap[1] + 0.9 * d[1]};
  const EmittedWave e = emitted_wavevector(kap2, kc, w.k_s_mag);
  const vec2 knew{kap2[0] + kc[0], kap2[1] + kc[1]};
  CHECK(e.k_s_new[0] == knew[0]);
  CHECK(e.k_s_new[1] == knew[1]);
  CHECK(e.k_mis == doctest::Approx(std::hypot(knew[0], knew[1]) - w.k_s_mag).epsilon(1e-14));
  CHECK(e.k_mis < 0.0); // chord shortcut lands inside the shell
  CHECK(e.phi == doctest::Approx(std::atan2(knew[1], knew[0])).epsilon(1e-14));

  const EmittedWave zero = emitted_wavevector({0.0, 0.0}, {0.0, 0.0}, w.k_s_mag);
  CHECK(zero.phi == 0.0);
}

namespace {

ComplexField scrambled_field(int n, double seed) {
  GridSpec g;
  g.nx = n;
  g.ny = n;
  ComplexField f(g, 0.2);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      f.at(i, j) = cplx(std::sin(seed + 0.7 * i + 0.31 * j), std::cos(seed + 0.2 * i - 0.5 * j));
  return f;
}

} // namespace

TEST_CASE("phase ramp is unitary and composes additively") {
  const double L = 0.01;
  ComplexField f = scrambled_field(16, 1.0);
  const double n0 = norm_quadrature(f);

  ComplexField id = f;
  apply_phase_ramp(id, PhaseRamp{{0.0, 0.0}}, L);
  for (size_t k = 0; k < f.v.size(); ++k) CHECK(id.v[k] == f.v[k]);

  const PhaseRamp r1{{230.0, -410.0}};
  const PhaseRamp r2{{-90.0, 555.0}};
  ComplexField seq = f;
  apply_phase_ramp(seq, r1, L);
  CHECK(norm_quadrature(seq) == doctest::Approx(n0).epsilon(1e-12));
  apply_phase_ramp(seq, r2, L);

  ComplexField once = f;
  apply_phase_ramp(once, PhaseRamp{{r1.delta[0] + r2.delta[0], r1.delta[1] + r2.delta[1]}}, L);
  for (size_t k = 0; k < f.v.size(); ++k) CHECK(std::abs(seq.v[k] - once.v[k]) <= 1e-10);
}

TEST_CASE("phase ramp shifts the discrete spectrum") {
  GridSpec g;
  g.nx = 32;
  g.ny = 32;
  ComplexField f(g, 0.2);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x(i), y = g.y(j);
      f.at(i, j) = std::exp(-(x * x + y * y) / (0.5 * 0.5));
    }

  // delta chosen so the phase advances exactly 2 pi * 3 / nx per cell
  const double L = 0.01;
  const int shift = 3;
  const double delta_x = 2.0 * consts::pi * shift / (g.x_extent * L);
  auto spectrum_peak = [&](const ComplexField& fld) {
    int best_q = 0;
    double best = -1.0;
    for (int q = -g.nx / 2; q < g.nx / 2; ++q) {
      double power = 0.0;
      for (int j = 0; j < g.ny; ++j) {
        cplx acc{0.0, 0.0};
        for (int i = 0; i < g.nx; ++i)
          acc += fld.at(i, j) * std::polar(1.0, -2.0 * consts::pi * q * i / double(g.nx));
        power += std::norm(acc);
      }
      if (power > best) {
        best = power;
        best_q = q;
      }
    }
    return best_q;
  };

  CHECK(spectrum_peak(f) == 0);
  apply_phase_ramp(f, PhaseRamp{{delta_x, 0.0}}, L);
  CHECK(spectrum_peak(f) == shift);
}

TEST_CASE("gaussian suppression fit") {
  std::vector<double> k, eta;
  for (double kk = -16.0; kk <= 16.0; kk += 4.0) {
    k.push_back(kk);
    eta.push_back(0.8 * std::exp(-(kk * kk) / (11.4 * 11.4)));
  }
  const GaussianFit fit = fit_gaussian_suppression(k, eta);
  CHECK(fit.width == doctest::Approx(11.4).epsilon(1e-9));
  CHECK(fit.eta0 == doctest::Approx(0.8).epsilon(1e-9));

  CHECK_THROWS_AS(fit_gaussian_suppression({0, 1, 2}, {1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(fit_gaussian_suppression({0, 1, 2, 3, 4}, {1.0, 0.9, 0.5, 0.2, 0.0}),
                  std::invalid_argument); // zero efficiency has no log
  CHECK_THROWS_AS(fit_gaussian_suppression({1, 1, 1, 1, 1}, {1.0, 0.9, 0.5, 0.2, 0.1}),
                  std::invalid_argument); // constant sweep
  CHECK_THROWS_AS(fit_gaussian_suppression({0, 1, 2, 3, 4}, {0.1, 0.2, 0.4, 0.6, 0.9}),
                  std::invalid_argument); // growth is not suppression
}
