#include "loopkit/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "loopkit/constants.hpp"
#include "loopkit/coupling.hpp"
#include "loopkit/extraction.hpp"
#include "loopkit/feedline.hpp"
#include "loopkit/fixtures.hpp"
#include "loopkit/resonator.hpp"
#include "loopkit/tline.hpp"
#include "loopkit/touchstone.hpp"

namespace loopkit::validate {

namespace {

std::string num(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

std::string with_unit(double value, const char* unit) {
  std::string text = num(value);
  if (unit != nullptr && unit[0] != '\0') {
    text += ' ';
    text += unit;
  }
  return text;
}

// Builds the two reference loops (and their width variants) used throughout
// the suite, with the option of a perturbed dielectric.
struct ReferenceBench {
  double eps_scale = 1.0;

  resonator::Loop stripline(double width, double slit_angle = pi) const {
    resonator::Loop loop;
    loop.loop_radius = 0.09;
    loop.slit_angle = slit_angle;
    loop.shield_width = 0.020;
    loop.cross_section = tline::Stripline{width, 3.18e-3, 70e-6};
    loop.dielectric = {2.2 * eps_scale, 0.0016};
    return loop;
  }

  resonator::Loop microstrip(double width) const {
    resonator::Loop loop;
    loop.loop_radius = 0.09;
    loop.slit_angle = pi;
    loop.shield_width = 0.020;
    loop.cross_section = tline::Microstrip{width, 1.575e-3, 70e-6};
    loop.dielectric = {2.2 * eps_scale, 0.0016};
    return loop;
  }
};

class Suite {
 public:
  explicit Suite(const Options& options)
      : options_(options), bench_{options.eps_r_scale} {}

  Report take() && { return std::move(report_); }

  void add(int criterion, std::string group, std::string name,
           std::string expected, std::string computed, std::string tolerance,
           bool passed) {
    report_.checks.push_back({criterion, std::move(group), std::move(name),
                              std::move(expected), std::move(computed),
                              std::move(tolerance), passed});
  }

  // Relative comparison: |computed - expected| <= tol * |expected|.
  void relative(int criterion, const std::string& group,
                const std::string& name, double expected, double computed,
                double tol, const char* unit, bool scale_tolerance = true) {
    if (scale_tolerance) tol *= options_.tolerance_scale;
    const bool ok =
        std::abs(computed - expected) <= tol * std::abs(expected);
    add(criterion, group, name, with_unit(expected, unit),
        with_unit(computed, unit), num(tol * 100.0) + "% rel", ok);
  }

  // Upper bound: computed <= bound.
  void at_most(int criterion, const std::string& group,
               const std::string& name, double computed, double bound,
               const char* unit) {
    add(criterion, group, name, "<= " + with_unit(bound, unit),
        with_unit(computed, unit), "absolute bound", computed <= bound);
  }

  // Lower bound: computed >= bound.
  void at_least(int criterion, const std::string& group,
                const std::string& name, double computed, double bound,
                const char* unit) {
    add(criterion, group, name, ">= " + with_unit(bound, unit),
        with_unit(computed, unit), "absolute bound", computed >= bound);
  }

  void interval(int criterion, const std::string& group,
                const std::string& name, double computed, double lo, double hi,
                const char* unit) {
    add(criterion, group, name,
        "within [" + num(lo) + ", " + num(hi) + "] " + unit,
        with_unit(computed, unit), "absolute bounds",
        computed >= lo && computed <= hi);
  }

  void truth(int criterion, const std::string& group, const std::string& name,
             const std::string& expected, const std::string& computed,
             bool passed) {
    add(criterion, group, name, expected, computed, "exact", passed);
  }

  void run() {
    model_rows();
    width_families();
    slit_shift_law();
    bench_line();
    feed_resistance();
    extraction_round_trip();
    coupled_link();
    termination_optimality();
    mutual_inductance_oracle();
    integrity();
  }

 private:
  // Criteria 1 and 2: the two reference designs against their published
  // model rows, with the design runtime budget.
  void model_rows() {
    struct Case {
      int criterion;
      const char* group;
      resonator::Loop loop;
      const char* table;
    };
    const Case cases[] = {
        {1, "stripline reference design", bench_.stripline(0.010),
         "stripline-w10-comparison"},
        {2, "microstrip reference design", bench_.microstrip(0.010),
         "microstrip-w10-comparison"},
    };
    for (const auto& c : cases) {
      const auto start = std::chrono::steady_clock::now();
      const auto rlc = resonator::build(c.loop);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      const auto* row = fixtures::table(c.table).find_label("Model");
      relative(c.criterion, c.group, "f0", row->f0_mhz, rlc.f0 / 1e6, 0.03,
               "MHz");
      relative(c.criterion, c.group, "L", row->l_uh, rlc.inductance * 1e6,
               0.03, "uH");
      relative(c.criterion, c.group, "C", row->c_pf, rlc.capacitance * 1e12,
               0.08, "pF");
      relative(c.criterion, c.group, "R", row->r_ohm, rlc.resistance, 0.30,
               "ohm");
      relative(c.criterion, c.group, "Q", row->q, rlc.q, 0.25, "");
      at_most(c.criterion, c.group, "design runtime", seconds, 1.0, "s");
    }
  }

  // Criterion 3: the 2..10 mm width families track the full-wave tables and
  // preserve their trends.
  void width_families() {
    struct Family {
      const char* group;
      const char* table;
      bool is_stripline;
    };
    const Family families[] = {
        {"stripline width family", "stripline-fullwave", true},
        {"microstrip width family", "microstrip-fullwave", false},
    };
    for (const auto& family : families) {
      const auto& table = fixtures::table(family.table);
      std::vector<double> f0s, qs, widths;
      for (const auto& row : table.rows) {
        const auto loop = family.is_stripline
                              ? bench_.stripline(row.width)
                              : bench_.microstrip(row.width);
        const auto rlc = resonator::build(loop);
        relative(3, family.group,
                 "f0 at W = " + num(row.width * 1e3) + " mm", row.f0_mhz,
                 rlc.f0 / 1e6, 0.15, "MHz");
        widths.push_back(row.width);
        f0s.push_back(rlc.f0);
        qs.push_back(rlc.q);
      }
      std::string f0_note = "yes";
      std::string q_note = "yes";
      bool f0_monotone = true;
      bool q_monotone = true;
      for (std::size_t i = 1; i < f0s.size(); ++i) {
        if (!(f0s[i] < f0s[i - 1]) && f0_monotone) {
          f0_monotone = false;
          f0_note = "violated at W = " + num(widths[i] * 1e3) + " mm";
        }
        if (!(qs[i] > qs[i - 1]) && q_monotone) {
          q_monotone = false;
          q_note = "violated at W = " + num(widths[i] * 1e3) + " mm";
        }
      }
      truth(3, family.group, "f0 strictly decreasing in W",
            "strictly decreasing", f0_note, f0_monotone);
      truth(3, family.group, "Q strictly increasing in W",
            "strictly increasing", q_note, q_monotone);
    }
  }

  // Criterion 4: moving the slit from opposite the feed to 10 degrees from
  // it rescales the capacitance by the stub-length ratio.
  void slit_shift_law() {
    const std::string group = "slit-shift law";
    const double expected = 350.0 / 180.0;
    const auto opposite = resonator::build(bench_.stripline(0.010));
    const auto shifted =
        resonator::build(bench_.stripline(0.010, 10.0 * pi / 180.0));
    relative(4, group, "model C(10 deg) / C(180 deg)", expected,
             shifted.capacitance / opposite.capacitance, 1e-12, "", false);

    const double sim_strip =
        fixtures::table("stripline-shifted").find_width(0.010)->c_pf /
        fixtures::table("stripline-fullwave").find_width(0.010)->c_pf;
    relative(4, group, "full-wave stripline C ratio at W = 10 mm", expected,
             sim_strip, 0.10, "");

    const double sim_ms =
        fixtures::table("microstrip-shifted").find_width(0.010)->c_pf /
        fixtures::table("microstrip-fullwave").find_width(0.010)->c_pf;
    relative(0, group, "full-wave microstrip C ratio at W = 10 mm", expected,
             sim_ms, 0.10, "");
  }

  // Criterion 5: the published bench line, re-derived from its geometry.
  void bench_line() {
    const std::string group = "bench microstrip at 40 MHz";
    const tline::Microstrip cs{2e-3, 813e-6, 35e-6};
    const tline::Dielectric diel{3.0 * options_.eps_r_scale, 0.001};
    const auto params = tline::analyze(cs, diel, {}, 40e6);
    relative(5, group, "Re{gamma}", 0.0105, params.gamma.real(), 0.15,
             "Np/m");
    relative(5, group, "Im{gamma}", 1.31, params.gamma.imag(), 0.03, "rad/m");
    relative(5, group, "Re{Z0}", 50.38, params.z0_complex.real(), 0.05,
             "ohm");
  }

  // Criterion 6: the closed-form effective feed resistance against the exact
  // bookkeeping, the minimizing reactance against a grid argmin, and the
  // lossless annihilation bound.
  void feed_resistance() {
    const std::complex<double> gamma{0.0105, 1.31};
    const std::complex<double> z0{50.38, -0.3585};
    for (double length : {0.1, 0.25, 0.5}) {
      const feedline::Line line{gamma, z0, length};
      const std::string group = "feed resistance, l = " + num(length) + " m";

      double worst = 0.0;
      for (int x = -200; x <= 200; ++x) {
        const double exact = feedline::reff_exact(line, {0.0, double(x)});
        const double simplified = feedline::reff_simplified(line, double(x));
        worst = std::max(worst, std::abs(simplified - exact) / exact);
      }
      at_most(6, group, "max |simplified - exact| / exact over X in [-200, 200]",
              worst, 0.05, "");

      const double x_min = feedline::x_in_min(line);
      double best_x = x_min - 5.0;
      double best_value = feedline::reff_simplified(line, best_x);
      for (int i = 1; i <= 1000; ++i) {
        const double x = x_min - 5.0 + 0.01 * i;
        const double value = feedline::reff_simplified(line, x);
        if (value < best_value) {
          best_value = value;
          best_x = x;
        }
      }
      at_most(6, group, "|closed-form argmin - grid argmin|",
              std::abs(x_min - best_x), 0.0101, "ohm");
    }

    const feedline::Line lossless{{0.0, 1.31}, {50.38, 0.0}, 0.25};
    double worst = 0.0;
    for (double x : {-200.0, -50.0, 0.0, 50.0, 200.0})
      worst = std::max(worst, feedline::reff_exact(lossless, {0.0, x}));
    at_most(6, "lossless feed", "max effective resistance", worst, 1e-12,
            "ohm");
  }

  // Criterion 7: randomized synthesize-then-extract round trips plus the
  // equivalence of the three data formats.
  void extraction_round_trip() {
    const std::string group = "synthesize-extract round trip";
    std::mt19937 rng(20250819u);
    std::uniform_real_distribution<double> r_dist(0.05, 1.0);
    std::uniform_real_distribution<double> l_dist(0.1e-6, 1.0e-6);
    std::uniform_real_distribution<double> c_dist(10e-12, 200e-12);
    std::uniform_real_distribution<double> angle_dist(0.0, 60.0);

    double worst_r = 0.0, worst_l = 0.0, worst_c = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const double r = r_dist(rng);
      const double l = l_dist(rng);
      const double c = c_dist(rng);
      const double theta = angle_dist(rng);
      const auto net = synthesize(r, l, c, 50.0, theta, 30e6);
      const auto rlc =
          extraction::extract_rlc(net, {50.0, theta, 30e6});
      worst_r = std::max(worst_r, std::abs(rlc.resistance - r) / r);
      worst_l = std::max(worst_l, std::abs(rlc.inductance - l) / l);
      worst_c = std::max(worst_c, std::abs(rlc.capacitance - c) / c);
    }
    at_most(7, group, "worst R error over 100 cases", worst_r, 1e-3, "rel");
    at_most(7, group, "worst L error over 100 cases", worst_l, 1e-3, "rel");
    at_most(7, group, "worst C error over 100 cases", worst_c, 1e-3, "rel");

    const auto net = synthesize(0.24, 0.36e-6, 45e-12, 50.0, 17.8, 30e6);
    const auto from_ri = touchstone::parse(touchstone::write(net));
    const auto from_ma = touchstone::parse(polar_text(net, false));
    const auto from_db = touchstone::parse(polar_text(net, true));
    double worst = 0.0;
    for (std::size_t i = 0; i < net.frequencies.size(); ++i) {
      worst = std::max(worst, std::abs(from_ri.s[i][0] - from_ma.s[i][0]));
      worst = std::max(worst, std::abs(from_ri.s[i][0] - from_db.s[i][0]));
    }
    at_most(7, group, "format disagreement across RI/MA/DB", worst, 1e-9,
            "");
  }

  // Criterion 8: the coupled reference pair through a frozen matching
  // network reproduces the published peak and bandwidth window.
  void coupled_link() {
    const std::string group = "coupled link with fixed match";
    const auto rlc = resonator::build(bench_.microstrip(0.010));
    const coupling::Resonator loop{rlc.resistance, rlc.inductance,
                                   rlc.capacitance};
    const double mutual = coupling::mutual_inductance(0.09, 0.09, 0.10);
    std::vector<double> grid;
    for (double f = 30e6; f <= 55e6 + 1.0; f += 10e3) grid.push_back(f);
    const auto curve =
        coupling::lmatch_bandwidth(loop, loop, mutual, 42.8e6, grid);
    at_least(8, group, "peak matched efficiency", curve.peak, 0.90, "");
    if (curve.half_power) {
      interval(8, group, "half-power bandwidth",
               curve.half_power->bandwidth / 1e6, 3.0, 12.0, "MHz");
    } else {
      truth(8, group, "half-power bandwidth", "within [3, 12] MHz",
            "not bracketed by the 30-55 MHz sweep", false);
    }
  }

  // Criterion 9: the closed-form termination beats a dense grid around it at
  // five frequencies spanning the resonance.
  void termination_optimality() {
    const std::string group = "termination optimality";
    const auto rlc = resonator::build(bench_.microstrip(0.010));
    const coupling::Resonator loop{rlc.resistance, rlc.inductance,
                                   rlc.capacitance};
    const double mutual = coupling::mutual_inductance(0.09, 0.09, 0.10);
    for (double scale : {0.9, 0.95, 1.0, 1.05, 1.1}) {
      const double f = rlc.f0 * scale;
      const auto z_opt = coupling::optimal_load(loop, loop, mutual, f);
      const double eta_opt =
          coupling::efficiency(loop, loop, mutual, f, z_opt);
      const double x_span = std::max(5.0, 0.5 * std::abs(z_opt.imag()));
      double grid_best = 0.0;
      for (int i = 0; i <= 100; ++i) {
        const double r_l = z_opt.real() * (0.5 + i / 100.0);
        for (int j = 0; j <= 100; ++j) {
          const double x_l = z_opt.imag() + x_span * (j / 50.0 - 1.0);
          grid_best = std::max(
              grid_best,
              coupling::efficiency(loop, loop, mutual, f, {r_l, x_l}));
        }
      }
      at_least(9, group,
               "margin over the 101x101 grid at " + num(scale) + " f0",
               (eta_opt - grid_best) / eta_opt, -1e-9, "rel");
    }
  }

  // Criterion 10: closed-form mutual inductance against the quadrature of
  // the double line integral with 1e4 segment pairs.
  void mutual_inductance_oracle() {
    const std::string group = "mutual inductance oracle";
    for (double d : {0.05, 0.10, 0.20}) {
      const double closed = coupling::mutual_inductance(0.09, 0.09, d);
      const double quadrature =
          coupling::mutual_inductance_neumann(0.09, 0.09, d, 100);
      at_most(10, group, "relative gap at d = " + num(d * 100.0) + " cm",
              std::abs(closed - quadrature) / closed, 1e-3, "rel");
    }
  }

  // Supplementary: the embedded reference tables are byte-identical to the
  // recorded snapshot.
  void integrity() {
    char expected[32], computed[32];
    std::snprintf(expected, sizeof expected, "0x%016llx",
                  static_cast<unsigned long long>(
                      fixtures::expected_integrity_hash()));
    std::snprintf(computed, sizeof computed, "0x%016llx",
                  static_cast<unsigned long long>(fixtures::integrity_hash()));
    truth(0, "reference data integrity", "table hash", expected, computed,
          fixtures::integrity_hash() == fixtures::expected_integrity_hash());
  }

  // A one-port file of the series RLC seen through a lossless feed section,
  // sampled on 401 points spanning f0 +/- 20%.
  static touchstone::Network synthesize(double r, double l, double c,
                                        double feed_z0, double theta_deg,
                                        double f_ref) {
    touchstone::Network net;
    net.ports = 1;
    net.reference_impedance = feed_z0;
    const double f0 = 1.0 / (2.0 * pi * std::sqrt(l * c));
    const int n = 401;
    for (int i = 0; i < n; ++i) {
      const double f = f0 * (0.8 + 0.4 * i / (n - 1));
      const double omega = 2.0 * pi * f;
      const std::complex<double> z{r, omega * l - 1.0 / (omega * c)};
      auto s = extraction::s_from_z(z, feed_z0);
      const double phase = 2.0 * pi * (theta_deg / 180.0) * (f / f_ref);
      s *= std::polar(1.0, -phase);
      net.frequencies.push_back(f);
      net.s.push_back({s, 0.0, 0.0, 0.0});
    }
    return net;
  }

  // The same network re-expressed in magnitude/angle or dB/angle text.
  static std::string polar_text(const touchstone::Network& net, bool db) {
    std::string text = db ? "# HZ S DB R 50\n" : "# HZ S MA R 50\n";
    char row[96];
    for (std::size_t i = 0; i < net.frequencies.size(); ++i) {
      const double mag = std::abs(net.s[i][0]);
      const double angle = std::arg(net.s[i][0]) * 180.0 / pi;
      const double first = db ? 20.0 * std::log10(mag) : mag;
      std::snprintf(row, sizeof row, "%.16g %.16g %.16g\n",
                    net.frequencies[i], first, angle);
      text += row;
    }
    return text;
  }

  Options options_;
  ReferenceBench bench_;
  Report report_;
};

}  // namespace

int Report::failures() const {
  int count = 0;
  for (const auto& check : checks)
    if (!check.passed) ++count;
  return count;
}

Report run(const Options& options) {
  Suite suite(options);
  suite.run();
  return std::move(suite).take();
}

}  // namespace loopkit::validate
