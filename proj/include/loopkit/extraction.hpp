#pragma once

#include <complex>
#include <vector>

#include "loopkit/touchstone.hpp"

namespace loopkit::extraction {

// Reflection coefficient <-> input impedance at a real reference impedance.
std::complex<double> z_from_s(std::complex<double> s11, double z0);
std::complex<double> s_from_z(std::complex<double> z, double z0);

// Input feedline between the port and the slit reference plane, described by
// its characteristic impedance and one-way electrical length (degrees) at a
// reference frequency; the length scales linearly with frequency.
struct FeedSection {
  double impedance = 50.0;            // ohm
  double electrical_length = 0.0;     // degrees at reference_frequency
  double reference_frequency = 30e6;  // Hz
};

// Rotates each reflection coefficient forward to the slit plane:
//   s11' = s11 * exp(+j * 2*pi * (length/180) * (f/f_ref))
// The magnitudes are preserved; zero length is the identity.
std::vector<std::complex<double>> deembed(
    const std::vector<double>& frequencies,
    const std::vector<std::complex<double>>& s11, const FeedSection& feed);

struct Resonance {
  double f0 = 0.0;                      // first upward reactance zero (Hz)
  std::vector<double> extra_crossings;  // later upward crossings (Hz)
};

// Locates the series resonance: the first upward zero crossing of Im{Z},
// linearly interpolated between the bracketing samples.  Throws when the
// reactance never crosses upward (including parallel-type, downward-only
// crossings).
Resonance find_resonance(const std::vector<double>& frequencies,
                         const std::vector<std::complex<double>>& z);

struct LcFit {
  double inductance = 0.0;   // H
  double capacitance = 0.0;  // F
  double f_low = 0.0;        // sample frequencies actually used (Hz)
  double f_high = 0.0;
  double residual = 0.0;     // |X(f0)| predicted by the fitted pair (ohm)
};

// Solves X(f) = wL - 1/(wC) from the reactance at two samples near f0
// (nearest samples to f0*(1 -/+ window)).  Throws when the samples coincide
// or the fitted L or C comes out non-positive.
LcFit fit_lc(const std::vector<double>& frequencies,
             const std::vector<std::complex<double>>& z, double f0,
             double window = 0.02);

struct ExtractedRlc {
  double resistance = 0.0;   // ohm, Re{Z} interpolated at f0
  double inductance = 0.0;   // H
  double capacitance = 0.0;  // F
  double f0 = 0.0;           // Hz
  double q = 0.0;            // 2*pi*f0*L/R
  LcFit fit;
  std::vector<double> extra_crossings;
};

// Full chain: renormalize the port data to the feed impedance, de-embed the
// feed section, convert to impedance at the slit, and fit the series RLC.
ExtractedRlc extract_rlc(const touchstone::Network& data,
                         const FeedSection& feed, double window = 0.02);

}  // namespace loopkit::extraction
