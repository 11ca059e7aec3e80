#pragma once

#include <complex>
#include <string>
#include <vector>

namespace loopkit::feedline {

// A uniform lossy transmission line between the input port and a load,
// described by its propagation constant, characteristic impedance, and
// physical length.
struct Line {
  std::complex<double> gamma;  // alpha + j*beta (Np/m, rad/m)
  std::complex<double> z0;     // characteristic impedance (ohm)
  double length = 0.0;         // m
};

// tanh(gamma * length), validated against the supported loss range.
std::complex<double> line_tanh(const Line& line);

// Real part of the input power bookkeeping, expanded into real arithmetic:
//   g = R_IN|Z0|^2 + |t|^2 R_IN (Z0'^2 - Z0''^2) + Z0' p (|Z_IN|^2 + |Z0|^2)
//       + 2 Z0' Z0'' X_IN |t|^2 - Z0'' q (|Z0|^2 - R_IN^2 - X_IN^2)
// with t = tanh(gamma l) = p + jq and Z0 = Z0' + jZ0''.  Units: ohm^3.
double g_function(const Line& line, std::complex<double> z_load);

// Effective series resistance the line adds to a resonator presenting
// impedance z_load at its far end, referred to the load current:
//   R_EFF = |I1/I2|^2 * Re{V1/I1} - R_IN
// computed from the analytic voltage/current relations of the loaded line.
double reff_exact(const Line& line, std::complex<double> z_load);

// Closed-form approximation for a purely reactive load (R_IN = 0):
//   R_EFF = g(jX) * |cosh(gamma l)|^2 / |Z0|^2
double reff_simplified(const Line& line, double x_load);

// Load reactance minimizing reff_simplified:
//   X_min = -Z0'' |t|^2 / (p + (Z0''/|Z0|) q)
// Returns 0 in the degenerate lossless real-impedance limit.
double x_in_min(const Line& line);

struct ReffPoint {
  double x_load = 0.0;
  double exact = 0.0;
  double simplified = 0.0;
};

// Tabulates both formulations over a reactance grid (R_IN = 0 rows).
std::vector<ReffPoint> reff_curve(const Line& line,
                                  const std::vector<double>& x_grid);

// Human-readable notes listing which assumptions behind reff_simplified the
// given line/load pair violates.  Empty when the closed form is trustworthy.
std::vector<std::string> assumption_warnings(const Line& line,
                                             std::complex<double> z_load);

}  // namespace loopkit::feedline
