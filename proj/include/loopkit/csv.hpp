#pragma once

#include <string>
#include <vector>

namespace loopkit::csv {

// Shortest decimal form carrying nine significant digits, with a '.' decimal
// separator regardless of locale.  Identical inputs always produce identical
// text, so emitted files are byte-reproducible.
std::string format_number(double value);

// Cells containing commas, double quotes, or line breaks are wrapped in
// double quotes with embedded quotes doubled; everything else passes through.
std::string escape(const std::string& cell);

// One line: escaped cells joined with ',' and terminated by '\n'.
std::string line(const std::vector<std::string>& cells);

}  // namespace loopkit::csv
