#pragma once

// Physical constants, SI units. CODATA 2018 unless noted otherwise.
namespace router::consts {

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double c_light  = 2.99792458e8;     // m/s (exact)
inline constexpr double mu0      = 1.25663706212e-6; // T m / A
inline constexpr double h_planck = 6.62607015e-34;   // J s (exact)
inline constexpr double hbar     = 1.054571817e-34;  // J s
inline constexpr double k_b      = 1.380649e-23;     // J / K (exact)
inline constexpr double mu_bohr  = 9.2740100783e-24; // J / T

// 87Rb: D1 line and ground-state hyperfine splitting.
inline constexpr double m_rb      = 1.443e-25;            // kg
inline constexpr double lambda_d1 = 795e-9;               // m
inline constexpr double f_gs      = 6.83e9;               // Hz
inline constexpr double omega_gs  = 2.0 * pi * f_gs;      // rad/s

// Hyperfine coupling constant of the two-level crossing models.
inline constexpr double a_hfs = h_planck * 3.42e9; // J

// Differential magnetic moment (mu_g - mu_s)/hbar of the storage levels,
// rounded from 2 pi x 2.8 MHz/G.
inline constexpr double mu_diff_over_hbar = 1.76e7; // rad / (s G)

// Electron and 87Rb nuclear g-factors as used by the crossing models.
inline constexpr double g_s = 2.0;
inline constexpr double g_i = -0.001;

}
