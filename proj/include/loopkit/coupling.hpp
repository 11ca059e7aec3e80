#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace loopkit::coupling {

// Series RLC description of one resonant loop at the operating frequency.
struct Resonator {
  double resistance = 0.0;  // ohm
  double inductance = 0.0;  // H
  double capacitance = 0.0; // F
};

// Mutual inductance of two coaxial circular filaments separated along their
// common axis (closed form via complete elliptic integrals).  Throws for
// coincident filaments.
double mutual_inductance(double radius1, double radius2,
                         double axial_distance);

// The same quantity from direct midpoint quadrature of the double line
// integral over both loops; slow, used as an independent reference.
double mutual_inductance_neumann(double radius1, double radius2,
                                 double axial_distance,
                                 std::size_t segments_per_loop);

// R + j(wL - 1/(wC)) of one resonator.
std::complex<double> self_impedance(const Resonator& res, double frequency);

// Impedance seen at the transmit port with the receive loop terminated in
// z_load.
std::complex<double> input_impedance(const Resonator& tx, const Resonator& rx,
                                     double mutual, double frequency,
                                     std::complex<double> z_load);

// Load impedance that maximizes the link efficiency: it cancels the receive
// resonator's reactance and presents the optimum real part.  Requires both
// resonators to be lossy.
std::complex<double> optimal_load(const Resonator& tx, const Resonator& rx,
                                  double mutual, double frequency);

// Link efficiency (power in the load over power into the transmit port) for
// an arbitrary receive termination.
double efficiency(const Resonator& tx, const Resonator& rx, double mutual,
                  double frequency, std::complex<double> z_load);

// Efficiency at the optimal load, in closed form.
double optimal_efficiency(const Resonator& tx, const Resonator& rx,
                          double mutual, double frequency);

// Overall transfer efficiency including the source mismatch:
// efficiency times (1 - |reflection|^2) against a source of impedance
// z_source.
double matched_efficiency(const Resonator& tx, const Resonator& rx,
                          double mutual, double frequency,
                          std::complex<double> z_load,
                          std::complex<double> z_source);

// One reactive element of a matching network, fixed in value; its reactance
// is re-evaluated at every frequency.
struct Element {
  enum class Kind { inductor, capacitor };
  Kind kind = Kind::inductor;
  double value = 0.0;  // H or F
  double reactance(double frequency) const;
};

// Lossless two-element L-network.  When shunt_at_termination is set the
// shunt element sits across the termination and the series element faces
// the port; otherwise the series element faces the termination.
struct LMatch {
  Element series;
  Element shunt;
  bool shunt_at_termination = false;
  // Impedance seen at the port when the far side is closed by z_termination.
  std::complex<double> transform(std::complex<double> z_termination,
                                 double frequency) const;
};

// Network that presents `target` at its port at f_design when terminated in
// the real resistance r0.  Requires 0 < Re{target} < r0.
LMatch match_from_real(double r0, std::complex<double> target,
                       double f_design);

// Network that turns a port-side view of `z_in` into the real resistance r0
// at f_design.  Requires 0 < Re{z_in} < r0.
LMatch match_to_real(std::complex<double> z_in, double r0, double f_design);

// Peak and half-power width of a sampled efficiency curve; the crossings are
// linearly interpolated.  Throws std::runtime_error when a half-power point
// lies outside the sampled range.
struct HalfPowerResult {
  double f_peak = 0.0;
  double peak = 0.0;
  double f_low = 0.0;
  double f_high = 0.0;
  double bandwidth = 0.0;
};
HalfPowerResult half_power_bandwidth(const std::vector<double>& frequency,
                                     const std::vector<double>& value);

// Non-throwing variant: nullopt when a half-power crossing lies outside the
// sampled range; malformed input still throws std::invalid_argument.
std::optional<HalfPowerResult> try_half_power_bandwidth(
    const std::vector<double>& frequency, const std::vector<double>& value);

// Extra series resistance added to a loop at a given frequency, as a function
// of the loop's series reactance there (typically a feed run's effective
// resistance).  An empty function contributes nothing.
using ExtraResistance =
    std::function<double(double frequency, double reactance)>;

// One sampled point of an efficiency sweep.
struct CurvePoint {
  double frequency = 0.0;         // Hz
  double eta = 0.0;               // link efficiency
  double eta_prime = 0.0;         // including source-side mismatch
  std::complex<double> z_load;    // receive termination used at this point
};

struct EfficiencyCurve {
  std::vector<CurvePoint> points;
  double peak = 0.0;    // highest eta_prime on the grid
  double f_peak = 0.0;  // its frequency
  std::optional<HalfPowerResult> half_power;  // of eta_prime, when bracketed
};

// Best-case efficiency over a frequency grid: the receive termination is
// re-optimized at every point and the source mismatch is assumed tuned out,
// so eta_prime equals eta.  `extra` (applied to both loops) models loss that
// varies over the sweep.  The grid must be strictly increasing.
EfficiencyCurve matched_efficiency_sweep(const Resonator& tx,
                                         const Resonator& rx, double mutual,
                                         const std::vector<double>& f_grid,
                                         const ExtraResistance& extra = {});

// Fixed-network bandwidth study: at f_match the receive side gets an L-match
// that turns the real port resistance into the optimal termination and the
// transmit side one that brings the resulting input impedance back to it;
// both networks are then frozen and swept over the grid, with eta_prime
// including the transmit-side mismatch against r_port.
EfficiencyCurve lmatch_bandwidth(const Resonator& tx, const Resonator& rx,
                                 double mutual, double f_match,
                                 const std::vector<double>& f_grid,
                                 double r_port = 50.0,
                                 const ExtraResistance& extra = {});

}  // namespace loopkit::coupling
