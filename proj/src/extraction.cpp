#include "loopkit/extraction.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "loopkit/constants.hpp"

namespace loopkit::extraction {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) {
    throw std::invalid_argument("extraction: " + message);
  }
}

void validate(const FeedSection& feed) {
  require(feed.impedance > 0.0, "feed impedance must be positive");
  require(feed.electrical_length >= 0.0,
          "feed electrical length must be non-negative");
  require(feed.reference_frequency > 0.0,
          "feed reference frequency must be positive");
}

void validate_sweep(const std::vector<double>& frequencies, std::size_t rows,
                    std::size_t minimum) {
  require(frequencies.size() == rows,
          "frequency and data lengths differ");
  require(frequencies.size() >= minimum,
          "need at least " + std::to_string(minimum) + " samples");
}

std::size_t nearest_index(const std::vector<double>& frequencies,
                          double target) {
  std::size_t best = 0;
  for (std::size_t n = 1; n < frequencies.size(); ++n) {
    if (std::abs(frequencies[n] - target) <
        std::abs(frequencies[best] - target)) {
      best = n;
    }
  }
  return best;
}

}  // namespace

std::complex<double> z_from_s(std::complex<double> s11, double z0) {
  require(z0 > 0.0, "reference impedance must be positive");
  if (s11 == std::complex<double>{1.0, 0.0}) {
    throw std::runtime_error("extraction: open-circuit input (s11 = 1)");
  }
  return z0 * (1.0 + s11) / (1.0 - s11);
}

std::complex<double> s_from_z(std::complex<double> z, double z0) {
  require(z0 > 0.0, "reference impedance must be positive");
  return (z - z0) / (z + z0);
}

std::vector<std::complex<double>> deembed(
    const std::vector<double>& frequencies,
    const std::vector<std::complex<double>>& s11, const FeedSection& feed) {
  validate(feed);
  validate_sweep(frequencies, s11.size(), 1);
  std::vector<std::complex<double>> shifted;
  shifted.reserve(s11.size());
  for (std::size_t n = 0; n < s11.size(); ++n) {
    const double phase = 2.0 * pi * (feed.electrical_length / 180.0) *
                         (frequencies[n] / feed.reference_frequency);
    shifted.push_back(s11[n] * std::polar(1.0, phase));
  }
  return shifted;
}

Resonance find_resonance(const std::vector<double>& frequencies,
                         const std::vector<std::complex<double>>& z) {
  validate_sweep(frequencies, z.size(), 2);
  Resonance result;
  bool found = false;
  bool downward = false;
  for (std::size_t n = 0; n + 1 < z.size(); ++n) {
    const double x0 = z[n].imag();
    const double x1 = z[n + 1].imag();
    if (x0 < 0.0 && x1 >= 0.0) {
      const double f = frequencies[n] + (0.0 - x0) / (x1 - x0) *
                                            (frequencies[n + 1] -
                                             frequencies[n]);
      if (!found) {
        result.f0 = f;
        found = true;
      } else {
        result.extra_crossings.push_back(f);
      }
    } else if (x0 >= 0.0 && x1 < 0.0) {
      downward = true;
    }
  }
  if (!found) {
    throw std::runtime_error(
        downward
            ? "extraction: only a parallel-type (downward) reactance "
              "crossing in band"
            : "extraction: no series resonance in band");
  }
  return result;
}

LcFit fit_lc(const std::vector<double>& frequencies,
             const std::vector<std::complex<double>>& z, double f0,
             double window) {
  validate_sweep(frequencies, z.size(), 2);
  require(f0 > 0.0, "resonant frequency must be positive");
  require(window > 0.0 && window < 1.0, "window must lie in (0, 1)");

  std::size_t low = nearest_index(frequencies, f0 * (1.0 - window));
  std::size_t high = nearest_index(frequencies, f0 * (1.0 + window));
  if (low == high) {
    if (high + 1 < frequencies.size()) {
      ++high;
    } else if (low > 0) {
      --low;
    }
  }
  if (low == high) {
    throw std::runtime_error(
        "extraction: cannot pick two distinct fit frequencies");
  }

  const double w1 = 2.0 * pi * frequencies[low];
  const double w2 = 2.0 * pi * frequencies[high];
  const double x1 = z[low].imag();
  const double x2 = z[high].imag();
  const double inductance = (x2 * w2 - x1 * w1) / (w2 * w2 - w1 * w1);
  const double inverse_c = w1 * w1 * inductance - w1 * x1;
  if (!(inductance > 0.0) || !(inverse_c > 0.0)) {
    throw std::runtime_error(
        "extraction: non-series-RLC behavior near the resonance");
  }

  LcFit fit;
  fit.inductance = inductance;
  fit.capacitance = 1.0 / inverse_c;
  fit.f_low = frequencies[low];
  fit.f_high = frequencies[high];
  const double w0 = 2.0 * pi * f0;
  fit.residual = std::abs(w0 * inductance - inverse_c / w0);
  return fit;
}

ExtractedRlc extract_rlc(const touchstone::Network& data,
                         const FeedSection& feed, double window) {
  validate(feed);
  require(data.ports >= 1, "network has no ports");
  validate_sweep(data.frequencies, data.s.size(), 3);

  std::vector<std::complex<double>> at_feed;
  at_feed.reserve(data.s.size());
  for (std::size_t n = 0; n < data.s.size(); ++n) {
    const auto z = z_from_s(data.s[n][0], data.reference_impedance);
    at_feed.push_back(s_from_z(z, feed.impedance));
  }
  const auto shifted = deembed(data.frequencies, at_feed, feed);

  std::vector<std::complex<double>> z_slit;
  z_slit.reserve(shifted.size());
  for (const auto& s : shifted) {
    z_slit.push_back(z_from_s(s, feed.impedance));
  }

  const auto resonance = find_resonance(data.frequencies, z_slit);
  const auto fit = fit_lc(data.frequencies, z_slit, resonance.f0, window);

  // Interpolate the slit-plane resistance at the resonance.
  std::size_t n = 1;
  while (n + 1 < data.frequencies.size() &&
         data.frequencies[n] < resonance.f0) {
    ++n;
  }
  const double f_lo = data.frequencies[n - 1];
  const double f_hi = data.frequencies[n];
  const double t = (resonance.f0 - f_lo) / (f_hi - f_lo);
  const double resistance =
      z_slit[n - 1].real() + t * (z_slit[n].real() - z_slit[n - 1].real());
  if (!(resistance > 0.0)) {
    throw std::runtime_error(
        "extraction: non-positive resistance at resonance");
  }

  ExtractedRlc out;
  out.resistance = resistance;
  out.inductance = fit.inductance;
  out.capacitance = fit.capacitance;
  out.f0 = resonance.f0;
  out.q = 2.0 * pi * resonance.f0 * fit.inductance / resistance;
  out.fit = fit;
  out.extra_crossings = resonance.extra_crossings;
  return out;
}

}  // namespace loopkit::extraction
