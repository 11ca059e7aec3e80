#include "loopkit/cli.hpp"

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "loopkit/config.hpp"
#include "loopkit/coupling.hpp"
#include "loopkit/csv.hpp"
#include "loopkit/extraction.hpp"
#include "loopkit/feedline.hpp"
#include "loopkit/resonator.hpp"
#include "loopkit/tline.hpp"
#include "loopkit/touchstone.hpp"
#include "loopkit/validate.hpp"

namespace loopkit::cli {

namespace {

constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr int kValidationFailure = 3;

std::string fmt(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

std::string fmt_complex(std::complex<double> value) {
  const double im = value.imag();
  return fmt(value.real()) + (std::signbit(im) ? " - j" : " + j") +
         fmt(std::abs(im));
}

std::string sanitize(const std::string& name) {
  std::string clean;
  for (char c : name)
    clean += (std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' ||
              c == '_')
                 ? c
                 : '_';
  return clean.empty() ? std::string("output") : clean;
}

// Everything a subcommand handler needs besides its own options.
struct Shared {
  std::ostream& out;
  std::ostream& err;
  std::optional<config::Project> project;
  std::string out_dir;  // empty: no CSV file is written
  std::string format = "report";

  bool csv() const { return format == "csv"; }

  bool need_project(const char* command) {
    if (project) return true;
    err << command
        << ": a project file is required (--config PATH or the "
           "LOOPKIT_CONFIG environment variable)\n";
    return false;
  }
};

// Prints the chosen stdout representation and, when an output directory is
// configured, also writes the CSV form to `filename` inside it.
int emit(Shared& shared, const std::string& filename,
         const std::string& csv_text, const std::string& report_text) {
  shared.out << (shared.csv() ? csv_text : report_text);
  if (shared.out_dir.empty()) return kOk;
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(shared.out_dir, ec);
  if (ec) {
    shared.err << "error: cannot create directory '" << shared.out_dir
               << "': " << ec.message() << "\n";
    return kUsageError;
  }
  const fs::path path = fs::path(shared.out_dir) / filename;
  std::ofstream file(path, std::ios::binary);
  file << csv_text;
  file.close();
  if (!file) {
    shared.err << "error: cannot write '" << path.string() << "'\n";
    return kUsageError;
  }
  shared.err << "wrote " << path.string() << "\n";
  return kOk;
}

double planar_width(const tline::CrossSection& cs) {
  if (const auto* stripline = std::get_if<tline::Stripline>(&cs))
    return stripline->width;
  if (const auto* microstrip = std::get_if<tline::Microstrip>(&cs))
    return microstrip->width;
  return 0.0;
}

std::string loop_csv_header() {
  return csv::line({"width_m", "f0_hz", "l_h", "c_f", "r_ohm", "q",
                    "r_rad_ohm", "r_cond_ohm", "r_stub_ohm", "r_feed_ohm"});
}

std::string loop_csv_row(double width, const resonator::LoopRlc& rlc) {
  using csv::format_number;
  return csv::line(
      {format_number(width), format_number(rlc.f0),
       format_number(rlc.inductance), format_number(rlc.capacitance),
       format_number(rlc.resistance), format_number(rlc.q),
       format_number(rlc.breakdown.radiation),
       format_number(rlc.breakdown.conductor),
       format_number(rlc.breakdown.stub), format_number(rlc.breakdown.feed)});
}

std::string loop_report(const std::string& name,
                        const resonator::LoopRlc& rlc) {
  std::ostringstream text;
  text << "loop '" << name << "'\n"
       << "  resonance        " << fmt(rlc.f0 / 1e6) << " MHz\n"
       << "  inductance       " << fmt(rlc.inductance * 1e6) << " uH\n"
       << "  capacitance      " << fmt(rlc.capacitance * 1e12) << " pF\n"
       << "  resistance       " << fmt(rlc.resistance) << " ohm\n"
       << "    radiation      " << fmt(rlc.breakdown.radiation) << " ohm\n"
       << "    conductor      " << fmt(rlc.breakdown.conductor) << " ohm\n"
       << "    stub           " << fmt(rlc.breakdown.stub) << " ohm\n"
       << "    feed run       " << fmt(rlc.breakdown.feed) << " ohm\n"
       << "  quality factor   " << fmt(rlc.q) << "\n"
       << "  stub length      " << fmt(rlc.stub_length) << " m\n"
       << "  feed length      " << fmt(rlc.feed_length) << " m\n"
       << "  loss evaluated   " << fmt(rlc.eval_frequency / 1e6) << " MHz\n";
  for (const auto& warning : rlc.warnings) text << "  note: " << warning << "\n";
  return text.str();
}

int run_design(Shared& shared, const std::string& name) {
  if (!shared.need_project("design")) return kUsageError;
  const auto* spec = shared.project->find_loop(name);
  if (spec == nullptr) {
    shared.err << "design: unknown loop '" << name
               << "' (known loops: " << shared.project->loop_names() << ")\n";
    return kUsageError;
  }
  resonator::LoopRlc rlc;
  try {
    rlc = resonator::build(spec->loop, spec->options);
  } catch (const std::exception& e) {
    shared.err << "design: loop '" << name << "': " << e.what() << "\n";
    return kUsageError;
  }
  const std::string csv_text =
      loop_csv_header() +
      loop_csv_row(planar_width(spec->loop.cross_section), rlc);
  return emit(shared, "design_" + sanitize(name) + ".csv", csv_text,
              loop_report(name, rlc));
}

int run_sweep(Shared& shared, const std::string& name) {
  if (!shared.need_project("sweep")) return kUsageError;
  const auto* spec = shared.project->find_sweep(name);
  if (spec == nullptr) {
    shared.err << "sweep: unknown sweep '" << name
               << "' (known sweeps: " << shared.project->sweep_names()
               << ")\n";
    return kUsageError;
  }
  const auto* loop_spec = shared.project->find_loop(spec->loop);
  if (loop_spec == nullptr) {
    shared.err << "sweep: loop '" << spec->loop << "' is not defined\n";
    return kUsageError;
  }
  if (std::holds_alternative<tline::Coax>(loop_spec->loop.cross_section)) {
    shared.err << "sweep: '" << name << "' varies width but loop '"
               << spec->loop << "' is coaxial\n";
    return kUsageError;
  }

  std::string csv_text = loop_csv_header();
  std::ostringstream report;
  report << "sweep '" << name << "' over loop '" << spec->loop << "' ("
         << spec->parameter << ")\n";
  char row[160];
  std::snprintf(row, sizeof row, "  %-10s %-10s %-10s %-10s %-10s %-10s\n",
                "width_mm", "f0_MHz", "L_uH", "C_pF", "R_ohm", "Q");
  report << row;
  for (double width : spec->grid()) {
    resonator::Loop loop = loop_spec->loop;
    std::visit(
        [&](auto& cs) {
          if constexpr (requires { cs.width; }) cs.width = width;
        },
        loop.cross_section);
    try {
      const auto rlc = resonator::build(loop, loop_spec->options);
      csv_text += loop_csv_row(width, rlc);
      std::snprintf(row, sizeof row,
                    "  %-10.6g %-10.6g %-10.6g %-10.6g %-10.6g %-10.6g\n",
                    width * 1e3, rlc.f0 / 1e6, rlc.inductance * 1e6,
                    rlc.capacitance * 1e12, rlc.resistance, rlc.q);
      report << row;
    } catch (const std::exception& e) {
      shared.err << "sweep: width " << fmt(width * 1e3) << " mm: " << e.what()
                 << "\n";
      csv_text += csv::line(
          {csv::format_number(width), "", "", "", "", "", "", "", "", ""});
      std::snprintf(row, sizeof row, "  %-10.6g (failed)\n", width * 1e3);
      report << row;
    }
  }
  return emit(shared, "sweep_" + sanitize(name) + ".csv", csv_text,
              report.str());
}

struct ExtractArgs {
  std::string path;
  double feed_impedance = 50.0;
  double electrical_length = 0.0;  // degrees at the reference frequency
  double reference_frequency = 30e6;
  double window = 0.02;
};

int run_extract(Shared& shared, const ExtractArgs& args) {
  touchstone::Network net;
  try {
    net = touchstone::parse_file(args.path);
  } catch (const std::exception& e) {
    shared.err << "extract: " << e.what() << "\n";
    return kDataError;
  }
  for (const auto& warning : net.warnings)
    shared.err << "extract: note: " << warning << "\n";
  extraction::ExtractedRlc rlc;
  try {
    rlc = extraction::extract_rlc(
        net,
        {args.feed_impedance, args.electrical_length,
         args.reference_frequency},
        args.window);
  } catch (const std::exception& e) {
    shared.err << "extract: " << e.what() << "\n";
    return kDataError;
  }

  using csv::format_number;
  const std::string csv_text =
      csv::line({"f0_hz", "l_h", "c_f", "r_ohm", "q"}) +
      csv::line({format_number(rlc.f0), format_number(rlc.inductance),
                 format_number(rlc.capacitance), format_number(rlc.resistance),
                 format_number(rlc.q)});

  std::ostringstream report;
  report << "extracted series RLC from '" << args.path << "'\n"
         << "  resonance        " << fmt(rlc.f0 / 1e6) << " MHz\n"
         << "  inductance       " << fmt(rlc.inductance * 1e6) << " uH\n"
         << "  capacitance      " << fmt(rlc.capacitance * 1e12) << " pF\n"
         << "  resistance       " << fmt(rlc.resistance) << " ohm\n"
         << "  quality factor   " << fmt(rlc.q) << "\n"
         << "  fit window       " << fmt(rlc.fit.f_low / 1e6) << " - "
         << fmt(rlc.fit.f_high / 1e6) << " MHz, residual "
         << fmt(rlc.fit.residual) << " ohm\n";
  if (!rlc.extra_crossings.empty()) {
    report << "  note: additional upward reactance crossings at";
    for (double f : rlc.extra_crossings) report << " " << fmt(f / 1e6) << " MHz";
    report << " - the fit used the first one\n";
  }
  const std::string stem = std::filesystem::path(args.path).stem().string();
  return emit(shared, "extract_" + sanitize(stem) + ".csv", csv_text,
              report.str());
}

struct CoupleArgs {
  std::string loop1;
  std::string loop2;  // empty: same as loop1
  double distance = 0.0;
  bool have_distance = false;
  double mutual = 0.0;
  bool have_mutual = false;
  std::string mode = "optimal";
  double match_frequency = 0.0;
  bool have_match = false;
  double f_start = 0.0;
  double f_stop = 0.0;
  double f_step = 10e3;
  double source_resistance = 50.0;
  bool include_feed = false;
  std::string feed;
};

int run_couple(Shared& shared, const CoupleArgs& args) {
  if (!shared.need_project("couple")) return kUsageError;
  const auto* spec1 = shared.project->find_loop(args.loop1);
  if (spec1 == nullptr) {
    shared.err << "couple: unknown loop '" << args.loop1
               << "' (known loops: " << shared.project->loop_names() << ")\n";
    return kUsageError;
  }
  const std::string name2 = args.loop2.empty() ? args.loop1 : args.loop2;
  const auto* spec2 = shared.project->find_loop(name2);
  if (spec2 == nullptr) {
    shared.err << "couple: unknown loop '" << name2
               << "' (known loops: " << shared.project->loop_names() << ")\n";
    return kUsageError;
  }
  if (args.have_distance == args.have_mutual) {
    shared.err << "couple: give exactly one of --distance or --mutual\n";
    return kUsageError;
  }
  if (args.mode == "lmatch" && !args.have_match) {
    shared.err << "couple: --mode lmatch requires --match-frequency\n";
    return kUsageError;
  }
  if (!(args.f_start > 0.0) || !(args.f_stop > args.f_start) ||
      !(args.f_step > 0.0)) {
    shared.err << "couple: need 0 < --f-start < --f-stop and --f-step > 0\n";
    return kUsageError;
  }

  resonator::LoopRlc rlc1, rlc2;
  try {
    rlc1 = resonator::build(spec1->loop, spec1->options);
    rlc2 = resonator::build(spec2->loop, spec2->options);
  } catch (const std::exception& e) {
    shared.err << "couple: " << e.what() << "\n";
    return kUsageError;
  }

  const double mutual =
      args.have_mutual
          ? args.mutual
          : coupling::mutual_inductance(spec1->loop.loop_radius,
                                        spec2->loop.loop_radius,
                                        args.distance);

  coupling::Resonator tx{rlc1.resistance, rlc1.inductance, rlc1.capacitance};
  coupling::Resonator rx{rlc2.resistance, rlc2.inductance, rlc2.capacitance};
  coupling::ExtraResistance extra;
  std::string feed_note =
      "feed loss         static, from each loop's own feed run";
  if (args.include_feed) {
    tx.resistance = rlc1.resistance - rlc1.breakdown.feed;
    rx.resistance = rlc2.resistance - rlc2.breakdown.feed;
    const resonator::Loop loop = spec1->loop;
    const double length = rlc1.feed_length;
    extra = [loop, length](double frequency, double reactance) {
      const auto params = tline::analyze(loop.cross_section, loop.dielectric,
                                         loop.conductor, frequency);
      return feedline::reff_exact({params.gamma, params.z0_complex, length},
                                  {0.0, reactance});
    };
    feed_note = "feed loss         per frequency, from loop '" + spec1->name +
                "' cross-section (length " + fmt(length) +
                " m), applied to both loops";
  } else if (!args.feed.empty()) {
    const auto* feed = shared.project->find_feed(args.feed);
    if (feed == nullptr) {
      shared.err << "couple: unknown feed '" << args.feed
                 << "' (known feeds: " << shared.project->feed_names()
                 << ")\n";
      return kUsageError;
    }
    tx.resistance = rlc1.resistance - rlc1.breakdown.feed;
    rx.resistance = rlc2.resistance - rlc2.breakdown.feed;
    const config::FeedSpec feed_copy = *feed;
    extra = [feed_copy](double frequency, double reactance) {
      return feedline::reff_exact(feed_copy.line_at(frequency),
                                  {0.0, reactance});
    };
    feed_note = "feed loss         per frequency, from feed '" + feed->name +
                "', applied to both loops";
  }

  std::vector<double> grid;
  for (double f = args.f_start; f <= args.f_stop + 0.5 * args.f_step;
       f += args.f_step)
    grid.push_back(f);

  coupling::EfficiencyCurve curve;
  try {
    if (args.mode == "lmatch") {
      curve = coupling::lmatch_bandwidth(tx, rx, mutual, args.match_frequency,
                                         grid, args.source_resistance, extra);
    } else {
      curve = coupling::matched_efficiency_sweep(tx, rx, mutual, grid, extra);
    }
  } catch (const std::exception& e) {
    shared.err << "couple: " << e.what() << "\n";
    return kUsageError;
  }

  using csv::format_number;
  std::string csv_text = csv::line(
      {"f_hz", "eta", "eta_prime", "z_load_re_ohm", "z_load_im_ohm"});
  for (const auto& point : curve.points)
    csv_text += csv::line({format_number(point.frequency),
                           format_number(point.eta),
                           format_number(point.eta_prime),
                           format_number(point.z_load.real()),
                           format_number(point.z_load.imag())});

  std::ostringstream report;
  const double k = mutual / std::sqrt(tx.inductance * rx.inductance);
  report << "coupled pair: '" << spec1->name << "' + '" << spec2->name
         << "'\n"
         << "  mutual inductance " << fmt(mutual * 1e9) << " nH (k = "
         << fmt(k) << ")\n";
  if (args.have_distance)
    report << "  coaxial distance  " << fmt(args.distance) << " m\n";
  report << "  " << feed_note << "\n";
  if (args.mode == "lmatch")
    report << "  mode              L-match frozen at "
           << fmt(args.match_frequency / 1e6) << " MHz into "
           << fmt(args.source_resistance) << " ohm\n";
  else
    report << "  mode              load re-optimized at every frequency\n";
  report << "  frequency grid    " << fmt(args.f_start / 1e6) << " - "
         << fmt(args.f_stop / 1e6) << " MHz, " << grid.size() << " points\n"
         << "  peak efficiency   " << fmt(curve.peak) << " at "
         << fmt(curve.f_peak / 1e6) << " MHz\n";
  if (curve.half_power)
    report << "  half-power band   " << fmt(curve.half_power->f_low / 1e6)
           << " - " << fmt(curve.half_power->f_high / 1e6) << " MHz ("
           << fmt(curve.half_power->bandwidth / 1e6) << " MHz wide)\n";
  else
    report << "  half-power band   not bracketed by the grid\n";

  return emit(shared,
              "couple_" + sanitize(spec1->name) + "_" + sanitize(spec2->name) +
                  ".csv",
              csv_text, report.str());
}

struct FeedlineArgs {
  std::string feed;
  double gamma_re = 0.0, gamma_im = 0.0;
  double z0_re = 0.0, z0_im = 0.0;
  double length = 0.0;
  int direct_count = 0;  // how many direct-constant options were given
  double frequency = 0.0;
  bool have_frequency = false;
  double x_start = -200.0, x_stop = 200.0, x_step = 1.0;
};

int run_feedline(Shared& shared, const FeedlineArgs& args) {
  feedline::Line line;
  std::string source;
  if (!args.feed.empty()) {
    if (args.direct_count > 0) {
      shared.err
          << "feedline: give --feed or the direct line constants, not both\n";
      return kUsageError;
    }
    if (!shared.need_project("feedline")) return kUsageError;
    const auto* feed = shared.project->find_feed(args.feed);
    if (feed == nullptr) {
      shared.err << "feedline: unknown feed '" << args.feed
                 << "' (known feeds: " << shared.project->feed_names()
                 << ")\n";
      return kUsageError;
    }
    if (feed->geometric && !args.have_frequency) {
      shared.err << "feedline: feed '" << args.feed
                 << "' is geometric; --frequency is required\n";
      return kUsageError;
    }
    try {
      line = feed->line_at(args.frequency);
    } catch (const std::exception& e) {
      shared.err << "feedline: " << e.what() << "\n";
      return kUsageError;
    }
    source = "feed '" + args.feed + "'";
  } else {
    if (args.direct_count != 5) {
      shared.err << "feedline: direct mode needs all of --gamma-re "
                    "--gamma-im --z0-re --z0-im --length\n";
      return kUsageError;
    }
    line = {{args.gamma_re, args.gamma_im},
            {args.z0_re, args.z0_im},
            args.length};
    source = "direct line constants";
  }
  if (!(args.x_step > 0.0) || args.x_stop < args.x_start) {
    shared.err << "feedline: need --x-step > 0 and --x-stop >= --x-start\n";
    return kUsageError;
  }

  std::vector<double> x_grid;
  for (double x = args.x_start; x <= args.x_stop + 0.5 * args.x_step;
       x += args.x_step)
    x_grid.push_back(x);

  std::vector<feedline::ReffPoint> points;
  double x_min = 0.0;
  std::vector<std::string> warnings;
  try {
    points = feedline::reff_curve(line, x_grid);
    x_min = feedline::x_in_min(line);
    warnings = feedline::assumption_warnings(line, {0.0, x_min});
  } catch (const std::exception& e) {
    shared.err << "feedline: " << e.what() << "\n";
    return kUsageError;
  }

  using csv::format_number;
  std::string csv_text =
      csv::line({"x_load_ohm", "r_eff_exact_ohm", "r_eff_simplified_ohm"});
  for (const auto& point : points)
    csv_text += csv::line({format_number(point.x_load),
                           format_number(point.exact),
                           format_number(point.simplified)});

  std::ostringstream report;
  report << "feed line from " << source << "\n"
         << "  gamma             " << fmt_complex(line.gamma) << " 1/m\n"
         << "  Z0                " << fmt_complex(line.z0) << " ohm\n"
         << "  length            " << fmt(line.length) << " m\n"
         << "  reactance grid    " << fmt(args.x_start) << " .. "
         << fmt(args.x_stop) << " ohm, " << points.size() << " points\n"
         << "  minimizing X      " << fmt(x_min) << " ohm\n"
         << "  R_eff at minimum  "
         << fmt(feedline::reff_exact(line, {0.0, x_min})) << " ohm\n";
  for (const auto& warning : warnings) report << "  note: " << warning << "\n";

  return emit(shared, "feedline.csv", csv_text, report.str());
}

int run_validate(Shared& shared, double eps_scale) {
  validate::Options options;
  options.eps_r_scale = eps_scale;
  if (shared.project) options.tolerance_scale = shared.project->tolerance_scale;
  const auto report = validate::run(options);

  std::string csv_text = csv::line({"criterion", "group", "name", "expected",
                                    "computed", "tolerance", "passed"});
  for (const auto& check : report.checks)
    csv_text += csv::line({std::to_string(check.criterion), check.group,
                           check.name, check.expected, check.computed,
                           check.tolerance, check.passed ? "1" : "0"});

  std::ostringstream text;
  for (const auto& check : report.checks) {
    text << (check.passed ? "[PASS] " : "[FAIL] ");
    if (check.criterion > 0)
      text << "criterion " << check.criterion;
    else
      text << "supplement ";
    text << "  " << check.group << " / " << check.name << ": expected "
         << check.expected << ", got " << check.computed << " (tolerance "
         << check.tolerance << ")\n";
  }
  text << report.checks.size() << " checks, " << report.failures()
       << " failures\n";

  const int rc = emit(shared, "validate.csv", csv_text, text.str());
  if (rc != kOk) return rc;
  return report.all_passed() ? kOk : kValidationFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"shielded-loop resonator design and analysis"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "INI project file")
      ->envname("LOOPKIT_CONFIG");
  std::string out_dir;
  app.add_option("--out", out_dir,
                 "directory that also receives the CSV output as a file");
  std::string format = "report";
  app.add_option("--format", format, "stdout format: report or csv")
      ->check(CLI::IsMember({"report", "csv"}));

  auto* design =
      app.add_subcommand("design", "build one configured loop into its RLC");
  std::string design_name;
  design->add_option("name", design_name, "loop name from the project file")
      ->required();

  auto* sweep =
      app.add_subcommand("sweep", "run a configured geometry sweep");
  std::string sweep_name;
  sweep->add_option("name", sweep_name, "sweep name from the project file")
      ->required();

  auto* extract = app.add_subcommand(
      "extract", "fit a series RLC to a one-port Touchstone file");
  ExtractArgs eargs;
  extract->add_option("file", eargs.path, "Touchstone file")->required();
  extract->add_option("--feed-impedance", eargs.feed_impedance,
                      "feed section impedance, ohm [50]");
  extract->add_option(
      "--electrical-length", eargs.electrical_length,
      "feed electrical length in degrees at the reference frequency [0]");
  extract->add_option("--reference-frequency", eargs.reference_frequency,
                      "frequency the electrical length refers to, Hz [30e6]");
  extract->add_option("--window", eargs.window,
                      "relative half-width of the two-point LC fit [0.02]");

  auto* couple = app.add_subcommand(
      "couple", "sweep link efficiency for a coupled pair of loops");
  CoupleArgs cargs;
  couple->add_option("--loop1", cargs.loop1, "transmit loop name")
      ->required();
  couple->add_option("--loop2", cargs.loop2,
                     "receive loop name [same as --loop1]");
  auto* opt_distance =
      couple->add_option("--distance", cargs.distance,
                         "coaxial distance between the loop planes, m");
  auto* opt_mutual =
      couple->add_option("--mutual", cargs.mutual, "mutual inductance, H");
  opt_distance->excludes(opt_mutual);
  couple->add_option("--mode", cargs.mode,
                     "optimal: re-optimized load; lmatch: frozen L-match "
                     "[optimal]")
      ->check(CLI::IsMember({"optimal", "lmatch"}));
  auto* opt_match = couple->add_option("--match-frequency",
                                       cargs.match_frequency,
                                       "L-match design frequency, Hz");
  couple->add_option("--f-start", cargs.f_start, "sweep start, Hz")
      ->required();
  couple->add_option("--f-stop", cargs.f_stop, "sweep stop, Hz")->required();
  couple->add_option("--f-step", cargs.f_step, "sweep step, Hz [10e3]");
  couple->add_option("--source-resistance", cargs.source_resistance,
                     "port resistance both matches refer to, ohm [50]");
  auto* opt_include_feed = couple->add_flag(
      "--include-feed", cargs.include_feed,
      "replace the static feed loss with the frequency-dependent "
      "feed-run resistance computed from the first loop's cross-section");
  auto* opt_feed =
      couple->add_option("--feed", cargs.feed,
                         "configured feed supplying the frequency-dependent "
                         "loss instead of the static term");
  opt_include_feed->excludes(opt_feed);

  auto* feedl = app.add_subcommand(
      "feedline",
      "tabulate the effective series resistance a feed line adds");
  FeedlineArgs fargs;
  feedl->add_option("--feed", fargs.feed,
                    "configured feed name (otherwise give the constants)");
  auto* fl_g_re = feedl->add_option("--gamma-re", fargs.gamma_re,
                                    "attenuation constant, Np/m");
  auto* fl_g_im =
      feedl->add_option("--gamma-im", fargs.gamma_im, "phase constant, rad/m");
  auto* fl_z_re =
      feedl->add_option("--z0-re", fargs.z0_re, "Re{Z0}, ohm");
  auto* fl_z_im =
      feedl->add_option("--z0-im", fargs.z0_im, "Im{Z0}, ohm");
  auto* fl_len = feedl->add_option("--length", fargs.length, "line length, m");
  auto* fl_freq = feedl->add_option(
      "--frequency", fargs.frequency,
      "evaluation frequency, Hz (required for geometric feeds)");
  feedl->add_option("--x-start", fargs.x_start,
                    "first load reactance, ohm [-200]");
  feedl->add_option("--x-stop", fargs.x_stop,
                    "last load reactance, ohm [200]");
  feedl->add_option("--x-step", fargs.x_step, "reactance step, ohm [1]");

  auto* validate_cmd = app.add_subcommand(
      "validate", "recompute every published comparison and report a table");
  double eps_scale = 1.0;
  validate_cmd->add_option(
      "--perturb-eps-r", eps_scale,
      "scale factor applied to every dielectric constant [1]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  Shared shared{out, err, {}, "", format};
  if (!config_path.empty()) {
    try {
      shared.project = config::load(config_path);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kUsageError;
    }
  }
  shared.out_dir = !out_dir.empty()
                       ? out_dir
                       : (shared.project ? shared.project->output_directory
                                         : std::string());

  cargs.have_distance = opt_distance->count() > 0;
  cargs.have_mutual = opt_mutual->count() > 0;
  cargs.have_match = opt_match->count() > 0;
  fargs.have_frequency = fl_freq->count() > 0;
  fargs.direct_count =
      static_cast<int>(fl_g_re->count() + fl_g_im->count() +
                       fl_z_re->count() + fl_z_im->count() + fl_len->count());

  if (design->parsed()) return run_design(shared, design_name);
  if (sweep->parsed()) return run_sweep(shared, sweep_name);
  if (extract->parsed()) return run_extract(shared, eargs);
  if (couple->parsed()) return run_couple(shared, cargs);
  if (feedl->parsed()) return run_feedline(shared, fargs);
  if (validate_cmd->parsed()) return run_validate(shared, eps_scale);
  err << "error: a subcommand is required\n";
  return kUsageError;
}

int run(int argc, const char* const* argv) {
  return run(argc, argv, std::cout, std::cerr);
}

}  // namespace loopkit::cli
