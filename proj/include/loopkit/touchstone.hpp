#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace loopkit::touchstone {

enum class Format { ri, ma, db };

// A parsed 1- or 2-port Touchstone 1.x network in canonical SI units.
// Two-port entries follow the file row order: s11, s21, s12, s22.
struct Network {
  int ports = 1;
  double reference_impedance = 50.0;
  Format source_format = Format::ri;
  std::string frequency_unit = "HZ";
  std::vector<double> frequencies;  // Hz, strictly increasing
  std::vector<std::array<std::complex<double>, 4>> s;
  std::vector<std::string> warnings;
};

// Parses Touchstone 1.x text: one optional `#` option line (frequency unit,
// parameter type, data format, reference impedance; missing tokens default to
// GHZ S MA R 50), `!` comments, and whitespace-separated data rows (3 columns
// for one port, 9 for two).  Throws std::runtime_error on malformed content,
// non-S parameters, non-monotone frequencies, or |S| > 1.05; |S| in
// (1.0, 1.05] is recorded as a warning.
Network parse(const std::string& text);
Network parse_file(const std::string& path);

// Serializes in RI format with frequencies in Hz and the network's reference
// impedance on the option line.
std::string write(const Network& network);
void write_file(const Network& network, const std::string& path);

}  // namespace loopkit::touchstone
