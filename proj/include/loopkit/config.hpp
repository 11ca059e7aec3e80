#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopkit/feedline.hpp"
#include "loopkit/resonator.hpp"
#include "loopkit/tline.hpp"

namespace loopkit::config {

// A named loop definition: full geometry plus the analysis options used when
// reducing it to a series RLC.
struct LoopSpec {
  std::string name;
  resonator::Loop loop;
  resonator::BuildOptions options;
};

// A named feed run.  Either the line constants are given directly (fixed
// gamma and complex Z0, taken as frequency-independent) or a physical
// cross-section is given and the constants are computed per frequency.
struct FeedSpec {
  struct Direct {
    std::complex<double> gamma;  // 1/m
    std::complex<double> z0;     // ohm
  };
  struct Geometric {
    tline::CrossSection cross_section;
    tline::Dielectric dielectric;
    tline::Conductor conductor;
  };

  std::string name;
  double length = 0.0;  // m
  std::optional<Direct> direct;
  std::optional<Geometric> geometric;

  // Line description at one frequency; evaluates the cross-section for
  // geometric feeds, echoes the constants for direct ones.
  feedline::Line line_at(double frequency) const;
};

// A named one-parameter sweep over a loop's geometry.
struct SweepSpec {
  std::string name;
  std::string loop;            // referenced loop name
  std::string parameter;       // currently "width"
  double start = 0.0;          // m
  double stop = 0.0;           // m
  int steps = 0;

  std::vector<double> grid() const;
};

struct Project {
  std::vector<LoopSpec> loops;
  std::vector<FeedSpec> feeds;
  std::vector<SweepSpec> sweeps;
  double tolerance_scale = 1.0;
  std::string output_directory;

  const LoopSpec* find_loop(const std::string& name) const;
  const FeedSpec* find_feed(const std::string& name) const;
  const SweepSpec* find_sweep(const std::string& name) const;

  // Comma-separated name lists for error messages.
  std::string loop_names() const;
  std::string feed_names() const;
  std::string sweep_names() const;
};

// Parses INI-style text: `[loop NAME]`, `[feed NAME]`, `[sweep NAME]`,
// `[tolerances]`, and `[output]` sections of `key = value` lines; `#` and `;`
// start comments.  Unknown sections or keys, missing required keys, and
// unresolved references are rejected with std::invalid_argument carrying the
// section and key path.
Project parse(const std::string& text);

// Reads and parses a file; errors are prefixed with the path.
Project load(const std::string& path);

}  // namespace loopkit::config
