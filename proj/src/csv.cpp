#include "loopkit/csv.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace loopkit::csv {

std::string format_number(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value,
                                    std::chars_format::general, 9);
  if (result.ec != std::errc{})
    throw std::runtime_error("csv: number formatting failed");
  return std::string(buffer, result.ptr);
}

std::string escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string quoted = "\"";
  for (char c : cell) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) out += ',';
    out += escape(cells[i]);
  }
  out += '\n';
  return out;
}

}  // namespace loopkit::csv
