#include "loopkit/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "loopkit/constants.hpp"
#include "loopkit/elliptic.hpp"

namespace loopkit::coupling {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(std::string("coupling: ") + message);
}

void validate_filaments(double r1, double r2, double d) {
  require(std::isfinite(r1) && r1 > 0.0, "loop radius must be positive");
  require(std::isfinite(r2) && r2 > 0.0, "loop radius must be positive");
  require(std::isfinite(d) && d >= 0.0, "axial distance must be non-negative");
  require(d > 0.0 || r1 != r2, "coincident filaments have no finite mutual");
}

void validate_resonator(const Resonator& res) {
  require(std::isfinite(res.resistance) && res.resistance >= 0.0,
          "resistance must be non-negative");
  require(std::isfinite(res.inductance) && res.inductance > 0.0,
          "inductance must be positive");
  require(std::isfinite(res.capacitance) && res.capacitance > 0.0,
          "capacitance must be positive");
}

void validate_link(const Resonator& tx, const Resonator& rx, double mutual,
                   double frequency) {
  validate_resonator(tx);
  validate_resonator(rx);
  require(std::isfinite(mutual) && mutual >= 0.0,
          "mutual inductance must be non-negative");
  require(std::isfinite(frequency) && frequency > 0.0,
          "frequency must be positive");
}

std::complex<double> parallel(std::complex<double> a, std::complex<double> b) {
  return a * b / (a + b);
}

}  // namespace

double mutual_inductance(double radius1, double radius2,
                         double axial_distance) {
  validate_filaments(radius1, radius2, axial_distance);
  const double sum = radius1 + radius2;
  const double k2 = 4.0 * radius1 * radius2 /
                    (sum * sum + axial_distance * axial_distance);
  const double k = std::sqrt(k2);
  const double kk = elliptic::complete_k(k);
  const double ee = elliptic::complete_e(k);
  return vacuum_permeability * std::sqrt(radius1 * radius2) *
         ((2.0 / k - k) * kk - (2.0 / k) * ee);
}

double mutual_inductance_neumann(double radius1, double radius2,
                                 double axial_distance,
                                 std::size_t segments_per_loop) {
  validate_filaments(radius1, radius2, axial_distance);
  require(segments_per_loop >= 4, "need at least four segments per loop");
  const std::size_t n = segments_per_loop;
  const double step = 2.0 * pi / static_cast<double>(n);
  const double base = axial_distance * axial_distance + radius1 * radius1 +
                      radius2 * radius2;

  // The integrand depends only on the angle difference, so accumulate one
  // pass over it with the multiplicity of each difference (n per diagonal).
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = (static_cast<double>(i)) * step;
    const double c = std::cos(diff);
    sum += c / std::sqrt(base - 2.0 * radius1 * radius2 * c);
  }
  sum *= static_cast<double>(n);
  return vacuum_permeability / (4.0 * pi) * radius1 * radius2 * step * step *
         sum;
}

std::complex<double> self_impedance(const Resonator& res, double frequency) {
  validate_resonator(res);
  require(std::isfinite(frequency) && frequency > 0.0,
          "frequency must be positive");
  const double omega = 2.0 * pi * frequency;
  return {res.resistance,
          omega * res.inductance - 1.0 / (omega * res.capacitance)};
}

std::complex<double> input_impedance(const Resonator& tx, const Resonator& rx,
                                     double mutual, double frequency,
                                     std::complex<double> z_load) {
  validate_link(tx, rx, mutual, frequency);
  const double omega_m = 2.0 * pi * frequency * mutual;
  return self_impedance(tx, frequency) +
         omega_m * omega_m / (self_impedance(rx, frequency) + z_load);
}

std::complex<double> optimal_load(const Resonator& tx, const Resonator& rx,
                                  double mutual, double frequency) {
  validate_link(tx, rx, mutual, frequency);
  require(tx.resistance > 0.0 && rx.resistance > 0.0,
          "lossless resonators have no finite optimal load");
  const double omega_m = 2.0 * pi * frequency * mutual;
  const double r_load = std::sqrt(
      rx.resistance * rx.resistance +
      omega_m * omega_m * rx.resistance / tx.resistance);
  return {r_load, -self_impedance(rx, frequency).imag()};
}

double efficiency(const Resonator& tx, const Resonator& rx, double mutual,
                  double frequency, std::complex<double> z_load) {
  validate_link(tx, rx, mutual, frequency);
  require(z_load.real() >= 0.0, "load resistance must be non-negative");
  const double omega_m = 2.0 * pi * frequency * mutual;
  const double m2 = omega_m * omega_m;
  const std::complex<double> loop2 = self_impedance(rx, frequency) + z_load;
  const double denom =
      tx.resistance * std::norm(loop2) + m2 * loop2.real();
  if (denom <= 0.0) return 0.0;
  return m2 * z_load.real() / denom;
}

double optimal_efficiency(const Resonator& tx, const Resonator& rx,
                          double mutual, double frequency) {
  validate_link(tx, rx, mutual, frequency);
  require(tx.resistance > 0.0 && rx.resistance > 0.0,
          "lossless resonators have no finite optimal load");
  const double omega_m = 2.0 * pi * frequency * mutual;
  const double kq2 =
      omega_m * omega_m / (tx.resistance * rx.resistance);
  const double root = 1.0 + std::sqrt(1.0 + kq2);
  return kq2 / (root * root);
}

double matched_efficiency(const Resonator& tx, const Resonator& rx,
                          double mutual, double frequency,
                          std::complex<double> z_load,
                          std::complex<double> z_source) {
  require(z_source.real() > 0.0, "source resistance must be positive");
  const auto z_in = input_impedance(tx, rx, mutual, frequency, z_load);
  const auto gamma =
      (z_in - std::conj(z_source)) / (z_in + z_source);
  const double mismatch = 1.0 - std::norm(gamma);
  return efficiency(tx, rx, mutual, frequency, z_load) *
         std::max(0.0, mismatch);
}

double Element::reactance(double frequency) const {
  const double omega = 2.0 * pi * frequency;
  if (kind == Kind::inductor) return omega * value;
  return -1.0 / (omega * value);
}

std::complex<double> LMatch::transform(std::complex<double> z_termination,
                                       double frequency) const {
  const std::complex<double> xs{0.0, series.reactance(frequency)};
  const std::complex<double> xp{0.0, shunt.reactance(frequency)};
  if (shunt_at_termination) return parallel(z_termination, xp) + xs;
  return parallel(z_termination + xs, xp);
}

namespace {

Element element_from_reactance(double x, double f_design) {
  const double omega = 2.0 * pi * f_design;
  if (x >= 0.0) return {Element::Kind::inductor, x / omega};
  return {Element::Kind::capacitor, -1.0 / (omega * x)};
}

}  // namespace

LMatch match_from_real(double r0, std::complex<double> target,
                       double f_design) {
  require(std::isfinite(f_design) && f_design > 0.0,
          "design frequency must be positive");
  require(std::isfinite(r0) && r0 > 0.0, "port resistance must be positive");
  require(target.real() > 0.0 && target.real() < r0,
          "matching requires 0 < Re{target} < the port resistance");

  // Shunt capacitor across r0 sets the real part, series element trims the
  // reactance.
  const double rt = target.real();
  const double xp = -r0 * std::sqrt(rt / (r0 - rt));
  const double im_p = xp * (r0 - rt) / r0;
  const double xs = target.imag() - im_p;
  LMatch net;
  net.shunt = element_from_reactance(xp, f_design);
  net.series = element_from_reactance(xs, f_design);
  net.shunt_at_termination = true;
  return net;
}

LMatch match_to_real(std::complex<double> z_in, double r0, double f_design) {
  require(std::isfinite(f_design) && f_design > 0.0,
          "design frequency must be positive");
  require(std::isfinite(r0) && r0 > 0.0, "port resistance must be positive");
  require(z_in.real() > 0.0 && z_in.real() < r0,
          "matching requires 0 < Re{z_in} < the port resistance");

  // Series element raises the impedance along a constant-resistance line,
  // then a shunt capacitor rotates it down onto r0.
  const double rin = z_in.real();
  const double xs = -z_in.imag() + std::sqrt(rin * (r0 - rin));
  const double x1 = z_in.imag() + xs;
  const double norm1 = rin * rin + x1 * x1;
  const double xp = -norm1 / x1;
  LMatch net;
  net.series = element_from_reactance(xs, f_design);
  net.shunt = element_from_reactance(xp, f_design);
  net.shunt_at_termination = false;
  return net;
}

std::optional<HalfPowerResult> try_half_power_bandwidth(
    const std::vector<double>& frequency, const std::vector<double>& value) {
  if (frequency.size() != value.size() || frequency.size() < 3)
    throw std::invalid_argument(
        "coupling: bandwidth needs matched arrays of at least three samples");
  const auto peak_it = std::max_element(value.begin(), value.end());
  const std::size_t peak =
      static_cast<std::size_t>(peak_it - value.begin());
  HalfPowerResult out;
  out.peak = *peak_it;
  out.f_peak = frequency[peak];
  const double half = 0.5 * out.peak;

  const auto interpolate = [&](std::size_t lo, std::size_t hi) {
    const double t = (half - value[lo]) / (value[hi] - value[lo]);
    return frequency[lo] + t * (frequency[hi] - frequency[lo]);
  };

  bool found_low = false;
  for (std::size_t i = peak; i-- > 0;) {
    if (value[i] <= half) {
      out.f_low = interpolate(i, i + 1);
      found_low = true;
      break;
    }
  }
  bool found_high = false;
  for (std::size_t i = peak + 1; i < value.size(); ++i) {
    if (value[i] <= half) {
      out.f_high = interpolate(i, i - 1);
      found_high = true;
      break;
    }
  }
  if (!found_low || !found_high) return std::nullopt;
  out.bandwidth = out.f_high - out.f_low;
  return out;
}

HalfPowerResult half_power_bandwidth(const std::vector<double>& frequency,
                                     const std::vector<double>& value) {
  const auto result = try_half_power_bandwidth(frequency, value);
  if (!result)
    throw std::runtime_error(
        "coupling: half-power point lies outside the sampled range");
  return *result;
}

namespace {

void validate_grid(const std::vector<double>& f_grid) {
  require(!f_grid.empty(), "frequency grid must not be empty");
  double previous = 0.0;
  for (double f : f_grid) {
    require(std::isfinite(f) && f > previous,
            "frequency grid must be positive and strictly increasing");
    previous = f;
  }
}

// The resonator with the sweep-dependent extra loss folded into its series
// resistance at one frequency.
Resonator with_extra(const Resonator& res, double frequency,
                     const ExtraResistance& extra) {
  if (!extra) return res;
  const double omega = 2.0 * pi * frequency;
  const double x =
      omega * res.inductance - 1.0 / (omega * res.capacitance);
  const double added = extra(frequency, x);
  require(std::isfinite(added) && added >= 0.0,
          "extra resistance must be finite and non-negative");
  Resonator adjusted = res;
  adjusted.resistance += added;
  return adjusted;
}

// Fills peak/f_peak/half_power from the collected points.
void finalize_curve(EfficiencyCurve& curve) {
  std::vector<double> f;
  std::vector<double> y;
  f.reserve(curve.points.size());
  y.reserve(curve.points.size());
  for (const auto& point : curve.points) {
    f.push_back(point.frequency);
    y.push_back(point.eta_prime);
  }
  const auto peak_it = std::max_element(y.begin(), y.end());
  curve.peak = *peak_it;
  curve.f_peak = f[static_cast<std::size_t>(peak_it - y.begin())];
  if (curve.points.size() >= 3 && curve.peak > 0.0)
    curve.half_power = try_half_power_bandwidth(f, y);
}

}  // namespace

EfficiencyCurve matched_efficiency_sweep(const Resonator& tx,
                                         const Resonator& rx, double mutual,
                                         const std::vector<double>& f_grid,
                                         const ExtraResistance& extra) {
  validate_grid(f_grid);
  EfficiencyCurve curve;
  curve.points.reserve(f_grid.size());
  for (double f : f_grid) {
    const Resonator tx_f = with_extra(tx, f, extra);
    const Resonator rx_f = with_extra(rx, f, extra);
    const auto z_load = optimal_load(tx_f, rx_f, mutual, f);
    const double eta = efficiency(tx_f, rx_f, mutual, f, z_load);
    curve.points.push_back({f, eta, eta, z_load});
  }
  finalize_curve(curve);
  return curve;
}

EfficiencyCurve lmatch_bandwidth(const Resonator& tx, const Resonator& rx,
                                 double mutual, double f_match,
                                 const std::vector<double>& f_grid,
                                 double r_port,
                                 const ExtraResistance& extra) {
  validate_grid(f_grid);
  require(std::isfinite(f_match) && f_match > 0.0,
          "match frequency must be positive");
  require(std::isfinite(r_port) && r_port > 0.0,
          "port resistance must be positive");

  // Synthesize both networks at the match frequency and freeze them.
  const Resonator tx_m = with_extra(tx, f_match, extra);
  const Resonator rx_m = with_extra(rx, f_match, extra);
  const auto z_opt = optimal_load(tx_m, rx_m, mutual, f_match);
  const LMatch rx_net = match_from_real(r_port, z_opt, f_match);
  const auto z_in_m = input_impedance(tx_m, rx_m, mutual, f_match, z_opt);
  const LMatch tx_net = match_to_real(z_in_m, r_port, f_match);

  EfficiencyCurve curve;
  curve.points.reserve(f_grid.size());
  for (double f : f_grid) {
    const Resonator tx_f = with_extra(tx, f, extra);
    const Resonator rx_f = with_extra(rx, f, extra);
    const auto z_load = rx_net.transform(r_port, f);
    const double eta = efficiency(tx_f, rx_f, mutual, f, z_load);
    const auto z_port =
        tx_net.transform(input_impedance(tx_f, rx_f, mutual, f, z_load), f);
    const auto gamma = (z_port - r_port) / (z_port + r_port);
    const double eta_prime = eta * std::max(0.0, 1.0 - std::norm(gamma));
    curve.points.push_back({f, eta, eta_prime, z_load});
  }
  finalize_curve(curve);
  return curve;
}

}  // namespace loopkit::coupling
