#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace loopkit::fixtures {

// One published reference row: either a trace-width family member (width > 0)
// or a labeled comparison row ("Simulation" / "Measurement" / "Model").
// Values are stored exactly as printed (MHz, uH, pF, ohm); the accessors
// convert to SI.
struct Row {
  const char* label;
  double width;  // m; 0 for labeled rows
  double f0_mhz;
  double l_uh;
  double c_pf;
  double r_ohm;
  double q;

  double f0_hz() const { return f0_mhz * 1e6; }
  double inductance() const { return l_uh * 1e-6; }
  double capacitance() const { return c_pf * 1e-12; }
  double resistance() const { return r_ohm; }
};

struct Table {
  const char* id;
  const char* description;
  std::vector<Row> rows;

  const Row* find_width(double width_m) const;
  const Row* find_label(const std::string& label) const;
};

// All embedded reference tables, in publication order:
//   stripline-fullwave, stripline-unplated, stripline-shifted,
//   stripline-w10-comparison, microstrip-fullwave, microstrip-shifted,
//   lumped-match, microstrip-w10-comparison
const std::vector<Table>& tables();

// Lookup by id; throws std::invalid_argument listing the known ids.
const Table& table(const std::string& id);

// FNV-1a hash of the canonical serialization of every table, used as an
// integrity check against accidental edits of the reference data.
std::uint64_t integrity_hash();
std::uint64_t expected_integrity_hash();

}  // namespace loopkit::fixtures
