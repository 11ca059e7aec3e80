#include "loopkit/fixtures.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace loopkit::fixtures {

namespace {

std::vector<Table> build_tables() {
  std::vector<Table> all;

  all.push_back(
      {"stripline-fullwave",
       "shielded stripline loop family, slit opposite the input, from "
       "full-wave simulation",
       {
           {"2 mm", 2e-3, 54.7, 0.400, 21.2, 0.532, 258},
           {"3 mm", 3e-3, 49.1, 0.379, 27.7, 0.394, 297},
           {"4 mm", 4e-3, 44.9, 0.376, 33.5, 0.325, 325},
           {"5 mm", 5e-3, 41.7, 0.367, 39.7, 0.279, 345},
           {"6 mm", 6e-3, 39.2, 0.357, 46.4, 0.240, 365},
           {"7 mm", 7e-3, 37.0, 0.350, 52.9, 0.215, 378},
           {"8 mm", 8e-3, 35.2, 0.342, 59.9, 0.195, 388},
           {"9 mm", 9e-3, 33.6, 0.344, 65.5, 0.183, 396},
           {"10 mm", 10e-3, 32.2, 0.337, 72.6, 0.166, 410},
       }});

  all.push_back(
      {"stripline-unplated",
       "unplated shielded stripline loop family from full-wave simulation",
       {
           {"2 mm", 2e-3, 54.5, 0.406, 21.0, 0.527, 264},
           {"3 mm", 3e-3, 49.1, 0.381, 27.6, 0.381, 308},
           {"4 mm", 4e-3, 45.0, 0.372, 33.6, 0.343, 307},
           {"5 mm", 5e-3, 41.8, 0.362, 40.0, 0.264, 360},
           {"6 mm", 6e-3, 39.2, 0.357, 46.0, 0.231, 382},
           {"7 mm", 7e-3, 37.1, 0.353, 52.2, 0.205, 401},
           {"8 mm", 8e-3, 35.3, 0.344, 59.3, 0.183, 415},
           {"9 mm", 9e-3, 33.7, 0.338, 66.1, 0.168, 427},
           {"10 mm", 10e-3, 32.3, 0.336, 72.2, 0.155, 440},
       }});

  all.push_back(
      {"stripline-shifted",
       "shielded stripline loop family with the ground slit 10 degrees from "
       "the input, from full-wave simulation",
       {
           {"2 mm", 2e-3, 37.8, 0.416, 42.5, 0.388, 255},
           {"3 mm", 3e-3, 34.0, 0.396, 55.4, 0.302, 280},
           {"4 mm", 4e-3, 31.2, 0.386, 67.5, 0.255, 296},
           {"5 mm", 5e-3, 29.0, 0.368, 81.8, 0.219, 306},
           {"6 mm", 6e-3, 27.3, 0.360, 94.5, 0.194, 319},
           {"7 mm", 7e-3, 25.8, 0.351, 108.5, 0.175, 326},
           {"8 mm", 8e-3, 24.5, 0.348, 121.1, 0.164, 327},
           {"9 mm", 9e-3, 23.5, 0.338, 136.2, 0.147, 339},
           {"10 mm", 10e-3, 22.5, 0.335, 149.0, 0.139, 343},
       }});

  all.push_back(
      {"stripline-w10-comparison",
       "unplated stripline loop at W = 10 mm: simulation vs measurement vs "
       "first-order model",
       {
           {"Simulation", 0.0, 32.3, 0.336, 72.2, 0.16, 440},
           {"Measurement", 0.0, 32.1, 0.326, 75.4, 0.20, 348},
           {"Model", 0.0, 29.0, 0.364, 82.5, 0.14, 490},
       }});

  all.push_back(
      {"microstrip-fullwave",
       "microstrip loop family, slit opposite the input, from full-wave "
       "simulation",
       {
           {"2 mm", 2e-3, 68.6, 0.414, 13.0, 0.598, 299},
           {"3 mm", 3e-3, 61.6, 0.409, 16.4, 0.477, 331},
           {"4 mm", 4e-3, 57.1, 0.391, 19.9, 0.394, 356},
           {"5 mm", 5e-3, 53.4, 0.381, 23.4, 0.343, 372},
           {"6 mm", 6e-3, 50.9, 0.372, 26.4, 0.291, 407},
           {"7 mm", 7e-3, 48.4, 0.362, 29.8, 0.256, 430},
           {"8 mm", 8e-3, 46.0, 0.367, 32.6, 0.248, 427},
           {"9 mm", 9e-3, 44.2, 0.364, 35.6, 0.229, 442},
           {"10 mm", 10e-3, 42.8, 0.358, 38.7, 0.203, 474},
       }});

  all.push_back(
      {"microstrip-shifted",
       "microstrip loop family with the ground slit 10 degrees from the "
       "input, from full-wave simulation",
       {
           {"2 mm", 2e-3, 46.4, 0.443, 26.5, 0.369, 350},
           {"3 mm", 3e-3, 42.4, 0.431, 32.7, 0.289, 398},
           {"4 mm", 4e-3, 39.3, 0.421, 39.0, 0.267, 389},
           {"5 mm", 5e-3, 36.9, 0.407, 45.8, 0.234, 403},
           {"6 mm", 6e-3, 34.8, 0.408, 51.3, 0.219, 407},
           {"7 mm", 7e-3, 32.9, 0.401, 58.2, 0.209, 398},
           {"8 mm", 8e-3, 31.5, 0.377, 67.6, 0.185, 403},
           {"9 mm", 9e-3, 30.3, 0.384, 71.8, 0.179, 409},
           {"10 mm", 10e-3, 29.3, 0.375, 79.0, 0.167, 412},
       }});

  all.push_back({"lumped-match",
                 "wire loop resonated with a lumped series capacitor, for "
                 "comparison",
                 {
                     {"Lumped", 0.0, 42.4, 0.469, 30.0, 0.244, 512},
                 }});

  all.push_back(
      {"microstrip-w10-comparison",
       "microstrip loop at W = 10 mm: simulation vs measurement vs "
       "first-order model",
       {
           {"Simulation", 0.0, 42.8, 0.358, 38.7, 0.20, 474},
           {"Measurement", 0.0, 42.1, 0.347, 41.3, 0.24, 381},
           {"Model", 0.0, 39.2, 0.364, 45.3, 0.26, 346},
       }});

  return all;
}

}  // namespace

const Row* Table::find_width(double width_m) const {
  for (const auto& row : rows) {
    if (row.width > 0.0 && std::abs(row.width - width_m) < 1e-9) {
      return &row;
    }
  }
  return nullptr;
}

const Row* Table::find_label(const std::string& label) const {
  for (const auto& row : rows) {
    if (label == row.label) {
      return &row;
    }
  }
  return nullptr;
}

const std::vector<Table>& tables() {
  static const std::vector<Table> all = build_tables();
  return all;
}

const Table& table(const std::string& id) {
  for (const auto& t : tables()) {
    if (id == t.id) {
      return t;
    }
  }
  std::string known;
  for (const auto& t : tables()) {
    known += known.empty() ? "" : ", ";
    known += t.id;
  }
  throw std::invalid_argument("fixtures: unknown table '" + id +
                              "'; known tables: " + known);
}

std::uint64_t integrity_hash() {
  std::uint64_t hash = 14695981039346656037ull;
  const auto mix = [&hash](const std::string& text) {
    for (unsigned char c : text) {
      hash ^= c;
      hash *= 1099511628211ull;
    }
  };
  char buffer[160];
  for (const auto& t : tables()) {
    mix(t.id);
    mix("\n");
    for (const auto& row : t.rows) {
      std::snprintf(buffer, sizeof buffer,
                    "%s|%.10g|%.10g|%.10g|%.10g|%.10g|%.10g\n", row.label,
                    row.width, row.f0_mhz, row.l_uh, row.c_pf, row.r_ohm,
                    row.q);
      mix(buffer);
    }
  }
  return hash;
}

std::uint64_t expected_integrity_hash() { return 0x7e650ce69195f4feull; }

}  // namespace loopkit::fixtures
