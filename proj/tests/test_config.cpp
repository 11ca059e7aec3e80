#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "loopkit/config.hpp"
#include "loopkit/constants.hpp"
#include "loopkit/tline.hpp"

namespace {

using namespace loopkit;

doctest::Approx approx(double value, double eps) {
  return doctest::Approx(value).epsilon(eps).scale(0.0);
}

// Message of the std::invalid_argument thrown by fn; fails the test when
// nothing is thrown.
template <typename Fn>
std::string config_error(Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  FAIL("expected std::invalid_argument");
  return {};
}

const char* const kFullText = R"(# reference definitions
[loop strip]
kind = stripline
loop_radius = 0.09
slit_angle_deg = 180
width = 0.010          ; strip width
ground_spacing = 0.00318
thickness = 70e-6
shield_width = 0.020
eps_r = 2.2
loss_tangent = 0.0016

[loop ms]
kind = microstrip
loop_radius = 0.09
width = 0.010
substrate_height = 1.575e-3
thickness = 70e-6
shield_width = 0.020
eps_r = 2.2
loss_tangent = 0.0016
slit_angle_deg = 10
exact_stub = true
conductor_loss_uses_circumference = true
eval_frequency = 40e6
step_scale = 2e-4

[loop cable]
kind = coax
loop_radius = 0.09
inner_radius = 0.45e-3
outer_radius = 1.5e-3
eps_r = 2.25

[feed bench]
gamma_real = 0.0105
gamma_imag = 1.31
z0_real = 50.38
z0_imag = -0.3585
length = 0.25

[feed printed]
kind = microstrip
width = 2e-3
substrate_height = 813e-6
thickness = 35e-6
eps_r = 3.0
loss_tangent = 0.001
conductivity = 5.8e7
length = 0.1

[sweep widths]
loop = strip
parameter = width
start = 0.002
stop = 0.010
steps = 9

[tolerances]
scale = 1.5

[output]
directory = out
)";

}  // namespace

TEST_CASE("a complete project parses with every field populated") {
  const auto project = config::parse(kFullText);
  REQUIRE(project.loops.size() == 3);
  REQUIRE(project.feeds.size() == 2);
  REQUIRE(project.sweeps.size() == 1);
  CHECK(project.tolerance_scale == 1.5);
  CHECK(project.output_directory == "out");

  const auto* strip = project.find_loop("strip");
  REQUIRE(strip != nullptr);
  CHECK(strip->loop.loop_radius == 0.09);
  CHECK(strip->loop.slit_angle == approx(pi, 1e-15));
  CHECK(strip->loop.shield_width == 0.020);
  CHECK(strip->loop.dielectric.eps_r == 2.2);
  CHECK(strip->loop.dielectric.loss_tangent == 0.0016);
  CHECK(strip->loop.conductor.conductivity == copper_conductivity);
  CHECK(strip->options.exact_stub == false);
  CHECK(strip->options.conductor_loss_uses_circumference == false);
  CHECK(strip->options.step_scale == 1e-4);
  CHECK(!strip->options.eval_frequency.has_value());
  {
    const auto* cs = std::get_if<tline::Stripline>(&strip->loop.cross_section);
    REQUIRE(cs != nullptr);
    CHECK(cs->width == 0.010);
    CHECK(cs->ground_spacing == 0.00318);
    CHECK(cs->thickness == 70e-6);
  }

  const auto* ms = project.find_loop("ms");
  REQUIRE(ms != nullptr);
  CHECK(ms->loop.slit_angle == approx(10.0 * pi / 180.0, 1e-15));
  CHECK(ms->options.exact_stub == true);
  CHECK(ms->options.conductor_loss_uses_circumference == true);
  CHECK(ms->options.step_scale == 2e-4);
  REQUIRE(ms->options.eval_frequency.has_value());
  CHECK(*ms->options.eval_frequency == 40e6);
  {
    const auto* cs = std::get_if<tline::Microstrip>(&ms->loop.cross_section);
    REQUIRE(cs != nullptr);
    CHECK(cs->substrate_height == 1.575e-3);
  }

  const auto* cable = project.find_loop("cable");
  REQUIRE(cable != nullptr);
  CHECK(cable->loop.shield_width == 0.0);
  {
    const auto* cs = std::get_if<tline::Coax>(&cable->loop.cross_section);
    REQUIRE(cs != nullptr);
    CHECK(cs->inner_radius == 0.45e-3);
    CHECK(cs->outer_radius == 1.5e-3);
  }

  CHECK(project.find_loop("nope") == nullptr);
  CHECK(project.loop_names() == "strip, ms, cable");
  CHECK(project.feed_names() == "bench, printed");
  CHECK(project.sweep_names() == "widths");
}

TEST_CASE("direct feeds echo their constants at any frequency") {
  const auto project = config::parse(kFullText);
  const auto* bench = project.find_feed("bench");
  REQUIRE(bench != nullptr);
  REQUIRE(bench->direct.has_value());
  CHECK(!bench->geometric.has_value());
  const auto line = bench->line_at(40e6);
  CHECK(line.gamma.real() == 0.0105);
  CHECK(line.gamma.imag() == 1.31);
  CHECK(line.z0.real() == 50.38);
  CHECK(line.z0.imag() == -0.3585);
  CHECK(line.length == 0.25);
  // Frequency-independent by construction.
  CHECK(bench->line_at(1e6).gamma == line.gamma);
}

TEST_CASE("geometric feeds resolve through the line model per frequency") {
  const auto project = config::parse(kFullText);
  const auto* printed = project.find_feed("printed");
  REQUIRE(printed != nullptr);
  REQUIRE(printed->geometric.has_value());

  const auto line = printed->line_at(40e6);
  const auto params = tline::analyze(printed->geometric->cross_section,
                                     printed->geometric->dielectric,
                                     printed->geometric->conductor, 40e6);
  CHECK(line.gamma == params.gamma);
  CHECK(line.z0 == params.z0_complex);
  CHECK(line.length == 0.1);
  CHECK(line.gamma.real() == approx(0.0105, 0.15));
  CHECK(line.gamma.imag() == approx(1.31, 0.03));

  // A different frequency gives different constants.
  CHECK(printed->line_at(20e6).gamma != line.gamma);
}

TEST_CASE("sweep grids span the requested range") {
  const auto project = config::parse(kFullText);
  const auto* widths = project.find_sweep("widths");
  REQUIRE(widths != nullptr);
  CHECK(widths->loop == "strip");
  CHECK(widths->parameter == "width");
  const auto grid = widths->grid();
  REQUIRE(grid.size() == 9);
  CHECK(grid.front() == 0.002);
  CHECK(grid.back() == 0.010);
  CHECK(grid[1] == approx(0.003, 1e-12));
  CHECK(grid[4] == approx(0.006, 1e-12));

  const auto single = config::parse(
      "[loop a]\nkind = coax\nloop_radius = 0.09\ninner_radius = 1e-3\n"
      "outer_radius = 3e-3\n[sweep one]\nloop = a\nstart = 0.004\nsteps = 1\n");
  const auto grid1 = single.find_sweep("one")->grid();
  REQUIRE(grid1.size() == 1);
  CHECK(grid1[0] == 0.004);
}

TEST_CASE("defaults cover the optional keys") {
  const auto project = config::parse(
      "[loop a]\nkind = microstrip\nloop_radius = 0.09\nwidth = 0.01\n"
      "substrate_height = 1.575e-3\nthickness = 70e-6\nshield_width = 0.02\n");
  const auto* a = project.find_loop("a");
  REQUIRE(a != nullptr);
  CHECK(a->loop.slit_angle == approx(pi, 1e-15));
  CHECK(a->loop.dielectric.eps_r == 1.0);
  CHECK(a->loop.dielectric.loss_tangent == 0.0);
  CHECK(a->loop.conductor.conductivity == copper_conductivity);
  CHECK(project.tolerance_scale == 1.0);
  CHECK(project.output_directory.empty());
  CHECK(project.sweep_names() == "(none)");
}

TEST_CASE("malformed projects are rejected with the offending path") {
  const auto starts_with = [](const std::string& text,
                              const std::string& prefix) {
    return text.rfind(prefix, 0) == 0;
  };

  auto message = config_error([] { config::parse("[widget w]\nx = 1\n"); });
  CHECK(starts_with(message, "config:"));
  CHECK(message.find("unknown section") != std::string::npos);

  message = config_error([] { config::parse("[loop]\n"); });
  CHECK(message.find("needs a name") != std::string::npos);

  message = config_error([] { config::parse("[tolerances extra]\n"); });
  CHECK(message.find("takes no name") != std::string::npos);

  message = config_error([] { config::parse("x = 1\n"); });
  CHECK(message.find("outside any section") != std::string::npos);

  message = config_error([] { config::parse("[output]\nno equals here\n"); });
  CHECK(message.find("expected 'key = value'") != std::string::npos);

  message = config_error([] { config::parse("[output]\n[loop x\n"); });
  CHECK(message.find("unterminated") != std::string::npos);

  message = config_error(
      [] { config::parse("[tolerances]\nscale = 1\nscale = 2\n"); });
  CHECK(message.find("duplicate key 'scale'") != std::string::npos);

  const std::string coax =
      "[loop a]\nkind = coax\nloop_radius = 0.09\ninner_radius = 1e-3\n"
      "outer_radius = 3e-3\n";
  message = config_error([&] { config::parse(coax + coax); });
  CHECK(message.find("duplicate loop 'a'") != std::string::npos);

  message = config_error([&] { config::parse(coax + "[loop b]\nkind = coax\n"
                                                    "loop_radius = 0.09\n"
                                                    "inner_radius = 1e-3\n"
                                                    "outer_radius = 3e-3\n"
                                                    "frobnicate = 7\n"); });
  CHECK(message.find("[loop b]") != std::string::npos);
  CHECK(message.find("unknown key 'frobnicate'") != std::string::npos);

  message = config_error([&] {
    config::parse(coax + "[loop b]\nkind = coax\nloop_radius = pi\n"
                         "inner_radius = 1e-3\nouter_radius = 3e-3\n");
  });
  CHECK(message.find("expected a number") != std::string::npos);

  message = config_error([] {
    config::parse("[loop a]\nkind = microstrip\nloop_radius = 0.09\n"
                  "width = 0.01\nsubstrate_height = 1e-3\nthickness = 7e-5\n"
                  "shield_width = 0.02\nground_spacing = 3e-3\n");
  });
  CHECK(message.find("does not apply to kind 'microstrip'") !=
        std::string::npos);

  message = config_error([] {
    config::parse("[loop a]\nkind = stripline\nloop_radius = 0.09\n"
                  "ground_spacing = 3e-3\nthickness = 7e-5\n"
                  "shield_width = 0.02\n");
  });
  CHECK(message.find("missing key 'width'") != std::string::npos);

  message = config_error([] {
    config::parse("[loop a]\nkind = waveguide\nloop_radius = 0.09\n");
  });
  CHECK(message.find("unknown kind 'waveguide'") != std::string::npos);

  message = config_error([] {
    config::parse("[loop a]\nkind = coax\nloop_radius = 0.09\n"
                  "inner_radius = 1e-3\nouter_radius = 3e-3\n"
                  "slit_angle_deg = 360\n");
  });
  CHECK(message.find("strictly between 0 and 360") != std::string::npos);

  message = config_error([] {
    config::parse("[loop a]\nkind = coax\nloop_radius = 0.09\n"
                  "inner_radius = 1e-3\nouter_radius = 3e-3\n"
                  "exact_stub = maybe\n");
  });
  CHECK(message.find("expected true or false") != std::string::npos);

  message = config_error([] {
    config::parse("[feed f]\nlength = 0.1\ngamma_real = 0.01\n"
                  "gamma_imag = 1.3\nz0_real = 50\nz0_imag = 0\nkind = coax\n"
                  "inner_radius = 1e-3\nouter_radius = 3e-3\n");
  });
  CHECK(message.find("not both") != std::string::npos);

  message = config_error([] { config::parse("[feed f]\nlength = 0.1\n"); });
  CHECK(message.find("needs either") != std::string::npos);

  message = config_error([&] {
    config::parse(coax + "[sweep s]\nloop = missing\nstart = 1e-3\n"
                         "stop = 2e-3\nsteps = 3\n");
  });
  CHECK(message.find("unknown loop 'missing'") != std::string::npos);
  CHECK(message.find("known loops: a") != std::string::npos);

  message = config_error([&] {
    config::parse(coax + "[sweep s]\nloop = a\nstart = 1e-3\nstop = 2e-3\n"
                         "steps = 0\n");
  });
  CHECK(message.find("at least 1") != std::string::npos);

  message = config_error([&] {
    config::parse(coax + "[sweep s]\nloop = a\nstart = 2e-3\nstop = 1e-3\n"
                         "steps = 5\n");
  });
  CHECK(message.find("must exceed start") != std::string::npos);

  message = config_error([&] {
    config::parse(coax + "[sweep s]\nloop = a\nstart = 1e-3\nstop = 2e-3\n"
                         "steps = 3\nparameter = radius\n");
  });
  CHECK(message.find("unsupported sweep parameter") != std::string::npos);

  message =
      config_error([] { config::parse("[tolerances]\nscale = -0.5\n"); });
  CHECK(message.find("must be positive") != std::string::npos);
}

TEST_CASE("files load with path-prefixed diagnostics") {
  const std::string path = "test_config_tmp.ini";
  {
    std::ofstream file(path);
    file << kFullText;
  }
  const auto project = config::load(path);
  CHECK(project.loops.size() == 3);
  std::remove(path.c_str());

  const auto missing =
      config_error([] { config::load("no_such_config.ini"); });
  CHECK(missing.find("cannot open") != std::string::npos);

  {
    std::ofstream file(path);
    file << "[widget w]\n";
  }
  const auto bad = config_error([&] { config::load(path); });
  CHECK(bad.find(path) != std::string::npos);
  CHECK(bad.find("unknown section") != std::string::npos);
  std::remove(path.c_str());
}
