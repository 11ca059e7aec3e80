#include "loopkit/resonator.hpp"

#include <cmath>
#include <stdexcept>
#include <variant>

#include "loopkit/constants.hpp"

namespace loopkit::resonator {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(std::string("resonator: ") + message);
}

double strip_width(const tline::CrossSection& cs) {
  if (const auto* s = std::get_if<tline::Stripline>(&cs)) return s->width;
  if (const auto* m = std::get_if<tline::Microstrip>(&cs)) return m->width;
  return 0.0;
}

void validate(const Loop& loop) {
  require(std::isfinite(loop.loop_radius) && loop.loop_radius > 0.0,
          "loop radius must be positive");
  require(std::isfinite(loop.slit_angle) && loop.slit_angle >= 0.0 &&
              loop.slit_angle < 2.0 * pi,
          "slit angle must lie in [0, 2*pi)");
  if (!std::holds_alternative<tline::Coax>(loop.cross_section)) {
    require(std::isfinite(loop.shield_width) && loop.shield_width > 0.0,
            "shield width must be positive");
    require(loop.shield_width >= strip_width(loop.cross_section),
            "shield must be at least as wide as the strip");
  }
}

std::complex<double> stub_z(const tline::LineParams& lp, double length) {
  return lp.z0_complex / std::tanh(lp.gamma * length);
}

// Series resistance contributed by the open stub.  For vanishing attenuation
// the general expression degenerates, so fall back to its small-loss limit.
double stub_esr(const tline::LineParams& lp, double length) {
  if (lp.gamma.real() * length < 1e-12) {
    const double omega = 2.0 * pi * lp.frequency;
    const std::complex<double> shunt{lp.g_per_m, omega * lp.c_per_m};
    return (1.0 / (length * shunt)).real() + lp.r_per_m * length / 3.0;
  }
  return stub_z(lp, length).real();
}

// Frequency at which the loop inductance cancels the full (transcendental)
// stub reactance, found by bisection below the stub's quarter-wave point.
double exact_resonance(const Loop& loop, double inductance, double stub_length,
                       double f_guess, double eps_eff, double step_scale) {
  const auto reactance = [&](double f) {
    const auto lp = tline::analyze(loop.cross_section, loop.dielectric,
                                   loop.conductor, f, step_scale);
    return 2.0 * pi * f * inductance + stub_z(lp, stub_length).imag();
  };
  const auto electrical_length = [&](double f) {
    return 2.0 * pi * f * std::sqrt(eps_eff) / speed_of_light * stub_length;
  };

  double lo = 0.05 * f_guess;
  if (reactance(lo) >= 0.0)
    throw std::runtime_error("resonator: no series resonance found");
  double hi = f_guess;
  while (reactance(hi) < 0.0) {
    hi *= 1.15;
    if (electrical_length(hi) >= 0.49 * pi)
      throw std::runtime_error(
          "resonator: no series resonance below the stub quarter-wave "
          "frequency");
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (reactance(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double equivalent_radius(const Loop& loop) {
  validate(loop);
  if (const auto* c = std::get_if<tline::Coax>(&loop.cross_section))
    return c->outer_radius;
  return loop.shield_width / 4.0;
}

double loss_perimeter(const Loop& loop) {
  validate(loop);
  if (const auto* c = std::get_if<tline::Coax>(&loop.cross_section))
    return 2.0 * pi * c->outer_radius;
  double stack = 0.0;
  if (const auto* s = std::get_if<tline::Stripline>(&loop.cross_section))
    stack = s->ground_spacing + 2.0 * s->thickness;
  else if (const auto* m = std::get_if<tline::Microstrip>(&loop.cross_section))
    stack = m->substrate_height + 2.0 * m->thickness;
  return 2.0 * (loop.shield_width + stack);
}

double loop_inductance(double loop_radius, double equivalent_radius) {
  require(std::isfinite(loop_radius) && loop_radius > 0.0,
          "loop radius must be positive");
  require(std::isfinite(equivalent_radius) && equivalent_radius > 0.0,
          "equivalent radius must be positive");
  const double log_term =
      std::log(8.0 * loop_radius / equivalent_radius) - 1.75;
  require(log_term > 0.0,
          "shield is too thick for the thin-wire inductance model");
  return vacuum_permeability * loop_radius * log_term;
}

double radiation_resistance(double loop_radius, double frequency) {
  require(std::isfinite(loop_radius) && loop_radius > 0.0,
          "loop radius must be positive");
  require(std::isfinite(frequency) && frequency > 0.0,
          "frequency must be positive");
  const double lambda = speed_of_light / frequency;
  const double area_ratio = pi * loop_radius * loop_radius / (lambda * lambda);
  return 320.0 * std::pow(pi, 4) * area_ratio * area_ratio;
}

std::complex<double> stub_impedance(const Loop& loop, double frequency,
                                    double step_scale) {
  validate(loop);
  const double stub_length = (2.0 * pi - loop.slit_angle) * loop.loop_radius;
  const auto lp = tline::analyze(loop.cross_section, loop.dielectric,
                                 loop.conductor, frequency, step_scale);
  return stub_z(lp, stub_length);
}

LoopRlc build(const Loop& loop, const BuildOptions& opts) {
  validate(loop);
  if (opts.eval_frequency)
    require(std::isfinite(*opts.eval_frequency) && *opts.eval_frequency > 0.0,
            "evaluation frequency must be positive");

  LoopRlc out;
  const double a = loop.loop_radius;
  out.stub_length = (2.0 * pi - loop.slit_angle) * a;
  out.feed_length = loop.slit_angle * a;

  const double b0 = equivalent_radius(loop);
  out.inductance = loop_inductance(a, b0);

  const auto sp = tline::static_params(loop.cross_section, loop.dielectric);
  const double c_per_m = std::sqrt(sp.eps_eff) / (speed_of_light * sp.z0);
  out.capacitance = c_per_m * out.stub_length;
  out.f0 = 1.0 / (2.0 * pi * std::sqrt(out.inductance * out.capacitance));

  if (opts.exact_stub) {
    out.f0 = exact_resonance(loop, out.inductance, out.stub_length, out.f0,
                             sp.eps_eff, opts.step_scale);
    const double omega0 = 2.0 * pi * out.f0;
    out.capacitance = 1.0 / (omega0 * omega0 * out.inductance);
  }

  const double f_eval = opts.eval_frequency.value_or(out.f0);
  out.eval_frequency = f_eval;

  const auto lp = tline::analyze(loop.cross_section, loop.dielectric,
                                 loop.conductor, f_eval, opts.step_scale);

  out.breakdown.radiation = radiation_resistance(a, f_eval);
  const double perimeter = loss_perimeter(loop);
  if (opts.conductor_loss_uses_circumference) {
    out.breakdown.conductor =
        2.0 * pi * a / perimeter *
        tline::sheet_resistance(f_eval, loop.conductor.conductivity);
  } else {
    out.breakdown.conductor =
        a / perimeter *
        std::sqrt(f_eval * vacuum_permeability / loop.conductor.conductivity);
  }
  out.breakdown.stub = stub_esr(lp, out.stub_length);
  out.breakdown.feed = lp.r_per_m * out.feed_length;
  out.resistance = out.breakdown.radiation + out.breakdown.conductor +
                   out.breakdown.stub + out.breakdown.feed;
  out.q = 2.0 * pi * out.f0 * out.inductance / out.resistance;

  const double lambda0 = speed_of_light / out.f0;
  if (2.0 * pi * a >= lambda0)
    out.warnings.push_back("loop perimeter exceeds a wavelength at resonance");
  if (b0 > 0.5 * a)
    out.warnings.push_back("shield is thick relative to the loop radius");
  const double beta0 =
      2.0 * pi * out.f0 * std::sqrt(sp.eps_eff) / speed_of_light;
  if (beta0 * out.stub_length > pi / 6.0)
    out.warnings.push_back(
        "stub is electrically long at resonance; lumped capacitance is "
        "approximate");
  return out;
}

}  // namespace loopkit::resonator
