#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "loopkit/tline.hpp"

namespace loopkit::resonator {

// A shielded-loop resonator: a circular loop of shielded transmission line
// whose shield is interrupted by a narrow slit.  The section of line between
// the feed and the slit acts as the feed run; the remainder is an open stub
// whose distributed capacitance resonates with the loop inductance.
struct Loop {
  double loop_radius = 0.0;  // center-line radius of the loop, m
  double slit_angle = 0.0;   // slit position measured from the feed, rad
  double shield_width = 0.0; // overall width of a planar shield stack, m
                             // (ignored for coax cross-sections)
  tline::CrossSection cross_section;
  tline::Dielectric dielectric;
  tline::Conductor conductor{};
};

// Equivalent round-wire radius of the shield conductor: a quarter of the
// overall width for a flat (planar) stack, the shield radius for coax.
double equivalent_radius(const Loop& loop);

// Circumference of the shield cross-section that carries the loop current:
// the perimeter of the bounding rectangle for a planar stack, the shield
// circumference for coax.
double loss_perimeter(const Loop& loop);

// Self-inductance of a circular loop of round wire, valid while the wire is
// thin compared with the loop.  Throws std::invalid_argument when the
// equivalent radius is too large for the model to stay positive.
double loop_inductance(double loop_radius, double equivalent_radius);

// Radiation resistance of an electrically small loop.
double radiation_resistance(double loop_radius, double frequency);

// Input impedance of the open stub section at one frequency.
std::complex<double> stub_impedance(const Loop& loop, double frequency,
                                    double step_scale = 1e-4);

struct Breakdown {
  double radiation = 0.0;  // ohm
  double conductor = 0.0;  // ohm, shield loss of the loop current
  double stub = 0.0;       // ohm, equivalent series resistance of the stub
  double feed = 0.0;       // ohm, series loss of the feed run
};

struct LoopRlc {
  double inductance = 0.0;      // H
  double capacitance = 0.0;     // F
  double resistance = 0.0;      // ohm, total at eval_frequency
  double f0 = 0.0;              // series resonance, Hz
  double q = 0.0;               // unloaded quality factor
  double stub_length = 0.0;     // m
  double feed_length = 0.0;     // m
  double eval_frequency = 0.0;  // Hz, where the resistance was evaluated
  Breakdown breakdown;
  std::vector<std::string> warnings;
};

struct BuildOptions {
  // Frequency at which the loss terms are evaluated; defaults to the
  // resonance.  The reported q always refers to the resonance.
  std::optional<double> eval_frequency{};
  // When set, the resonance is found from the full transcendental stub
  // reactance instead of the lumped-capacitance approximation, and the
  // reported capacitance is the value that places an ideal LC circuit at
  // that frequency.
  bool exact_stub = false;
  // When set, the shield loss of the loop current is scaled by the full
  // loop circumference instead of the loop radius alone.
  bool conductor_loss_uses_circumference = false;
  double step_scale = 1e-4;  // differentiation step for conductor loss
};

// Reduces the loop to its series RLC equivalent with a loss breakdown.
LoopRlc build(const Loop& loop, const BuildOptions& opts = {});

}  // namespace loopkit::resonator
