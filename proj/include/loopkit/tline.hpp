#pragma once

#include <complex>
#include <variant>

#include "loopkit/constants.hpp"

namespace loopkit::tline {

// Symmetric stripline: a rectangular strip centered between two ground planes,
// fully embedded in a homogeneous dielectric.
struct Stripline {
  double width = 0.0;           // strip width, m
  double ground_spacing = 0.0;  // inner distance between the ground planes, m
  double thickness = 0.0;       // strip metal thickness, m
};

// Microstrip: a rectangular strip on a dielectric substrate over a ground
// plane, with air above.
struct Microstrip {
  double width = 0.0;             // strip width, m
  double substrate_height = 0.0;  // dielectric thickness under the strip, m
  double thickness = 0.0;         // strip metal thickness, m
};

// Coaxial line with a homogeneous dielectric fill.
struct Coax {
  double inner_radius = 0.0;  // radius of the center conductor, m
  double outer_radius = 0.0;  // inner radius of the shield, m
};

using CrossSection = std::variant<Stripline, Microstrip, Coax>;

struct Dielectric {
  double eps_r = 1.0;         // relative permittivity
  double loss_tangent = 0.0;  // dielectric loss tangent
};

struct Conductor {
  double conductivity = copper_conductivity;  // S/m
};

// Lossless (quasi-static) line parameters.
struct StaticParams {
  double z0 = 0.0;       // characteristic impedance, ohm
  double eps_eff = 1.0;  // effective relative permittivity
};

// Closed-form impedance and effective permittivity of a cross-section.
// Stripline uses Wheeler's thick-strip formula, microstrip the
// Hammerstad-Jensen model with strip-thickness correction, coax the exact
// TEM result.  Throws std::invalid_argument on non-physical geometry.
StaticParams static_params(const CrossSection& cs, const Dielectric& diel);

// Surface resistance of a good conductor, ohm per square.
double sheet_resistance(double frequency, double conductivity);

// Conductor attenuation in Np/m from Wheeler's incremental-inductance rule:
// the sensitivity of the impedance to a uniform recession of every conducting
// wall, evaluated by a central difference whose step is step_scale times the
// smallest cross-section dimension.  Requires a strip thickness well above
// the skin depth; throws std::invalid_argument for zero-thickness strips.
double conductor_attenuation(const CrossSection& cs, const Dielectric& diel,
                             const Conductor& cond, double frequency,
                             double step_scale = 1e-4);

// Dielectric attenuation in Np/m: half the phase constant times the loss
// tangent.
double dielectric_attenuation(double frequency, double eps_eff,
                              double loss_tangent);

// Complete single-frequency description of a lossy line.
struct LineParams {
  double frequency = 0.0;  // Hz
  double z0 = 0.0;         // lossless characteristic impedance, ohm
  double eps_eff = 1.0;    // effective relative permittivity
  double alpha_c = 0.0;    // conductor attenuation, Np/m
  double alpha_d = 0.0;    // dielectric attenuation, Np/m
  double r_per_m = 0.0;    // series resistance, ohm/m
  double l_per_m = 0.0;    // series inductance, H/m
  double g_per_m = 0.0;    // shunt conductance, S/m
  double c_per_m = 0.0;    // shunt capacitance, F/m
  std::complex<double> gamma;       // propagation constant, 1/m
  std::complex<double> z0_complex;  // lossy characteristic impedance, ohm
};

// Builds the distributed RLGC description and the resulting propagation
// constant and complex characteristic impedance at one frequency.
LineParams analyze(const CrossSection& cs, const Dielectric& diel,
                   const Conductor& cond, double frequency,
                   double step_scale = 1e-4);

}  // namespace loopkit::tline
