#include "loopkit/feedline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace loopkit::feedline {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) {
    throw std::invalid_argument("feedline: " + message);
  }
}

void validate(const Line& line) {
  require(std::isfinite(line.gamma.real()) && std::isfinite(line.gamma.imag()),
          "propagation constant must be finite");
  require(line.gamma.real() >= 0.0,
          "attenuation constant must be non-negative");
  require(std::isfinite(line.z0.real()) && std::isfinite(line.z0.imag()),
          "characteristic impedance must be finite");
  require(line.z0.real() > 0.0,
          "characteristic impedance must have a positive real part");
  require(std::isfinite(line.length) && line.length > 0.0,
          "length must be positive");
  require(line.gamma.real() * line.length <= 50.0,
          "line exceeds 50 nepers of attenuation");
}

void validate_load(std::complex<double> z_load) {
  require(std::isfinite(z_load.real()) && std::isfinite(z_load.imag()),
          "load impedance must be finite");
  require(z_load.real() >= 0.0,
          "load resistance must be non-negative");
}

}  // namespace

std::complex<double> line_tanh(const Line& line) {
  validate(line);
  return std::tanh(line.gamma * line.length);
}

double g_function(const Line& line, std::complex<double> z_load) {
  validate(line);
  validate_load(z_load);
  const auto t = std::tanh(line.gamma * line.length);
  const double p = t.real();
  const double q = t.imag();
  const double r = z_load.real();
  const double x = z_load.imag();
  const double re0 = line.z0.real();
  const double im0 = line.z0.imag();
  const double z0_sq = std::norm(line.z0);
  const double t_sq = std::norm(t);
  return r * z0_sq + t_sq * r * (re0 * re0 - im0 * im0) +
         re0 * p * (std::norm(z_load) + z0_sq) + 2.0 * re0 * im0 * x * t_sq -
         im0 * q * (z0_sq - r * r - x * x);
}

double reff_exact(const Line& line, std::complex<double> z_load) {
  validate(line);
  validate_load(z_load);
  const auto gl = line.gamma * line.length;
  const auto t = std::tanh(gl);
  // |I1/I2|^2 * Re{V1/I1} with I1/I2 = (Z_IN/Z0) sinh + cosh and
  // V1/I1 = Z0 (Z_IN + Z0 t)/(Z0 + Z_IN t), grouped so the load-resonance
  // pole of V1/I1 cancels against the current-ratio zero.
  const auto dissipative =
      line.z0 * (z_load + line.z0 * t) * std::conj(line.z0 + z_load * t);
  return dissipative.real() * std::norm(std::cosh(gl)) / std::norm(line.z0) -
         z_load.real();
}

double reff_simplified(const Line& line, double x_load) {
  validate(line);
  const auto gl = line.gamma * line.length;
  return g_function(line, {0.0, x_load}) * std::norm(std::cosh(gl)) /
         std::norm(line.z0);
}

double x_in_min(const Line& line) {
  validate(line);
  const auto t = std::tanh(line.gamma * line.length);
  const double im0 = line.z0.imag();
  const double denom = t.real() + im0 / std::abs(line.z0) * t.imag();
  if (denom == 0.0) {
    return 0.0;  // lossless, purely real Z0: flat numerator, minimum at zero
  }
  return -im0 * std::norm(t) / denom;
}

std::vector<ReffPoint> reff_curve(const Line& line,
                                  const std::vector<double>& x_grid) {
  validate(line);
  require(!x_grid.empty(), "reactance grid must be non-empty");
  std::vector<ReffPoint> table;
  table.reserve(x_grid.size());
  for (double x : x_grid) {
    table.push_back({x, reff_exact(line, {0.0, x}), reff_simplified(line, x)});
  }
  return table;
}

std::vector<std::string> assumption_warnings(const Line& line,
                                             std::complex<double> z_load) {
  validate(line);
  validate_load(z_load);
  const auto t = std::tanh(line.gamma * line.length);
  std::vector<std::string> notes;
  if (std::abs(line.z0.imag()) > 0.05 * line.z0.real()) {
    notes.emplace_back(
        "characteristic impedance has a significant imaginary part");
  }
  if (t.real() > 0.2 * std::abs(t.imag())) {
    notes.emplace_back("line loss is not small relative to its electrical "
                       "length");
  }
  if (z_load.real() > 0.05 * std::abs(line.z0)) {
    notes.emplace_back("load resistance is not negligible");
  }
  return notes;
}

}  // namespace loopkit::feedline
