#include "loopkit/touchstone.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "loopkit/constants.hpp"

namespace loopkit::touchstone {

namespace {

[[noreturn]] void fail(const std::string& message, std::size_t line_number) {
  throw std::runtime_error("touchstone: " + message + " (line " +
                           std::to_string(line_number) + ")");
}

std::string upper(std::string token) {
  std::transform(token.begin(), token.end(), token.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return token;
}

struct OptionLine {
  double frequency_scale = 1e9;
  Format format = Format::ma;
  double reference = 50.0;
  std::string unit = "GHZ";
};

OptionLine parse_options(const std::string& line, std::size_t line_number) {
  OptionLine options;
  std::istringstream stream(line);
  std::string token;
  stream >> token;  // leading '#'
  while (stream >> token) {
    const std::string word = upper(token);
    if (word == "HZ" || word == "KHZ" || word == "MHZ" || word == "GHZ") {
      options.unit = word;
      options.frequency_scale = word == "HZ"    ? 1.0
                                : word == "KHZ" ? 1e3
                                : word == "MHZ" ? 1e6
                                                : 1e9;
    } else if (word == "S") {
      // Scattering parameters: the only supported network parameter.
    } else if (word == "Y" || word == "Z" || word == "H" || word == "G") {
      fail("unsupported parameter type '" + word + "'", line_number);
    } else if (word == "RI") {
      options.format = Format::ri;
    } else if (word == "MA") {
      options.format = Format::ma;
    } else if (word == "DB") {
      options.format = Format::db;
    } else if (word == "R") {
      double z0 = 0.0;
      if (!(stream >> z0) || !(z0 > 0.0)) {
        fail("reference impedance must be a positive number", line_number);
      }
      options.reference = z0;
    } else {
      fail("unrecognized option token '" + token + "'", line_number);
    }
  }
  return options;
}

std::complex<double> decode(Format format, double a, double b) {
  switch (format) {
    case Format::ri:
      return {a, b};
    case Format::ma:
      return std::polar(a, b * pi / 180.0);
    case Format::db:
      return std::polar(std::pow(10.0, a / 20.0), b * pi / 180.0);
  }
  throw std::logic_error("touchstone: unreachable format");
}

const char* format_number(char (&buffer)[32], double value) {
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

}  // namespace

Network parse(const std::string& text) {
  Network network;
  OptionLine options;
  bool saw_options = false;
  bool saw_data = false;
  std::size_t expected_columns = 0;

  std::istringstream lines(text);
  std::string raw;
  std::size_t line_number = 0;
  while (std::getline(lines, raw)) {
    ++line_number;
    std::string line = raw.substr(0, raw.find('!'));
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) {
      continue;
    }
    if (line[start] == '#') {
      if (saw_options) {
        fail("duplicate option line", line_number);
      }
      if (saw_data) {
        fail("option line after data", line_number);
      }
      options = parse_options(line.substr(start), line_number);
      saw_options = true;
      continue;
    }

    std::istringstream fields(line);
    std::vector<double> values;
    double value = 0.0;
    while (fields >> value) {
      values.push_back(value);
    }
    std::string leftover;
    if (fields.clear(), fields >> leftover) {
      fail("non-numeric data field '" + leftover + "'", line_number);
    }
    if (!saw_data) {
      if (values.size() != 3 && values.size() != 9) {
        fail("expected 3 or 9 columns, found " +
                 std::to_string(values.size()),
             line_number);
      }
      expected_columns = values.size();
      network.ports = values.size() == 3 ? 1 : 2;
      saw_data = true;
      if (!saw_options) {
        network.warnings.emplace_back(
            "missing option line; assuming '# GHZ S MA R 50'");
      }
    } else if (values.size() != expected_columns) {
      fail("inconsistent column count: expected " +
               std::to_string(expected_columns) + ", found " +
               std::to_string(values.size()),
           line_number);
    }

    const double frequency = values[0] * options.frequency_scale;
    if (!network.frequencies.empty() && frequency <= network.frequencies.back()) {
      fail("frequencies must be strictly increasing", line_number);
    }
    network.frequencies.push_back(frequency);

    std::array<std::complex<double>, 4> point{};
    for (std::size_t n = 0; 1 + 2 * n < values.size(); ++n) {
      point[n] = decode(options.format, values[1 + 2 * n], values[2 + 2 * n]);
      const double magnitude = std::abs(point[n]);
      if (magnitude > 1.05) {
        fail("non-passive data: |S| = " + std::to_string(magnitude),
             line_number);
      }
      if (magnitude > 1.0) {
        network.warnings.push_back("|S| = " + std::to_string(magnitude) +
                                   " slightly above unity (line " +
                                   std::to_string(line_number) + ")");
      }
    }
    network.s.push_back(point);
  }

  if (!saw_data) {
    throw std::runtime_error("touchstone: no data rows");
  }
  network.reference_impedance = options.reference;
  network.source_format = options.format;
  network.frequency_unit = options.unit;
  return network;
}

Network parse_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::runtime_error("touchstone: cannot open '" + path + "'");
  }
  std::ostringstream text;
  text << file.rdbuf();
  return parse(text.str());
}

std::string write(const Network& network) {
  if (network.ports != 1 && network.ports != 2) {
    throw std::invalid_argument("touchstone: only 1- or 2-port networks");
  }
  if (network.frequencies.size() != network.s.size()) {
    throw std::invalid_argument(
        "touchstone: frequency and data lengths differ");
  }
  char buffer[32];
  std::ostringstream out;
  out << "# HZ S RI R " << format_number(buffer, network.reference_impedance)
      << '\n';
  const std::size_t entries = network.ports == 1 ? 1 : 4;
  for (std::size_t row = 0; row < network.frequencies.size(); ++row) {
    out << format_number(buffer, network.frequencies[row]);
    for (std::size_t n = 0; n < entries; ++n) {
      out << ' ' << format_number(buffer, network.s[row][n].real());
      out << ' ' << format_number(buffer, network.s[row][n].imag());
    }
    out << '\n';
  }
  return out.str();
}

void write_file(const Network& network, const std::string& path) {
  std::ofstream file(path);
  if (!file) {
    throw std::runtime_error("touchstone: cannot open '" + path +
                             "' for writing");
  }
  file << write(network);
  if (!file) {
    throw std::runtime_error("touchstone: failed writing '" + path + "'");
  }
}

}  // namespace loopkit::touchstone
