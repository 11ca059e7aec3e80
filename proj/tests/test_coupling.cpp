#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "loopkit/constants.hpp"
#include "loopkit/coupling.hpp"
#include "loopkit/elliptic.hpp"
#include "loopkit/feedline.hpp"

namespace {

using namespace loopkit;
using namespace loopkit::coupling;

doctest::Approx approx(double value, double eps) {
  return doctest::Approx(value).epsilon(eps).scale(0.0);
}

// Series RLC of the wide microstrip reference loop near its resonance.
const Resonator kLoop{0.24123, 3.6415233e-7, 4.50261e-11};

}  // namespace

TEST_CASE("complete elliptic integrals match tabulated values") {
  CHECK(elliptic::complete_k(0.0) == approx(pi / 2.0, 1e-14));
  CHECK(elliptic::complete_e(0.0) == approx(pi / 2.0, 1e-14));
  CHECK(elliptic::complete_k(0.5) == approx(1.6857503548125961, 1e-13));
  CHECK(elliptic::complete_e(0.5) == approx(1.4674622093394272, 1e-13));
  CHECK(elliptic::complete_k(1.0 / std::sqrt(2.0)) ==
        approx(1.8540746773013719, 1e-13));
  CHECK(elliptic::complete_e(1.0 / std::sqrt(2.0)) ==
        approx(1.3506438810476755, 1e-13));

  // Near the logarithmic singularity.
  CHECK(elliptic::complete_k(0.999999) == approx(7.9474, 1e-3));
  CHECK(elliptic::complete_e(0.999999) == approx(1.0, 1e-4));

  CHECK_THROWS_AS(elliptic::complete_k(1.0), std::invalid_argument);
  CHECK_THROWS_AS(elliptic::complete_k(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(elliptic::complete_e(1.5), std::invalid_argument);
}

TEST_CASE("elliptic integrals satisfy the Legendre relation") {
  for (double k : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    const double kp = std::sqrt(1.0 - k * k);
    const double lhs = elliptic::complete_e(k) * elliptic::complete_k(kp) +
                       elliptic::complete_e(kp) * elliptic::complete_k(k) -
                       elliptic::complete_k(k) * elliptic::complete_k(kp);
    CAPTURE(k);
    CHECK(lhs == approx(pi / 2.0, 1e-12));
  }
}

TEST_CASE("mutual inductance agrees with direct quadrature") {
  for (double d : {0.05, 0.10, 0.20}) {
    const double closed = mutual_inductance(0.09, 0.09, d);
    const double quad = mutual_inductance_neumann(0.09, 0.09, d, 100);
    CAPTURE(d);
    CHECK(closed == approx(quad, 1e-9));
  }

  // Coplanar-but-offset-radius pair exercises the d = 0 branch.
  CHECK(mutual_inductance(0.09, 0.05, 0.0) ==
        approx(mutual_inductance_neumann(0.09, 0.05, 0.0, 200), 1e-9));
}

TEST_CASE("mutual inductance of the reference pair") {
  CHECK(mutual_inductance(0.09, 0.09, 0.10) == approx(3.7954e-8, 0.002));
  CHECK(mutual_inductance(0.09, 0.09, 0.10) ==
        mutual_inductance(0.09, 0.09, 0.10));
  CHECK(mutual_inductance(0.05, 0.09, 0.10) ==
        approx(mutual_inductance(0.09, 0.05, 0.10), 1e-14));
  CHECK(mutual_inductance(0.09, 0.09, 0.05) >
        mutual_inductance(0.09, 0.09, 0.10));
  CHECK(mutual_inductance(0.09, 0.09, 0.10) >
        mutual_inductance(0.09, 0.09, 0.20));
  CHECK_THROWS_AS(mutual_inductance(0.09, 0.09, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(mutual_inductance(0.0, 0.09, 0.1), std::invalid_argument);
}

TEST_CASE("optimal termination gives conjugate match and peak efficiency") {
  const double m = mutual_inductance(0.09, 0.09, 0.10);
  const double f = 42.8e6;

  const auto z_opt = optimal_load(kLoop, kLoop, m, f);
  const auto z_in = input_impedance(kLoop, kLoop, m, f, z_opt);
  CHECK(std::abs(z_in - std::conj(z_opt)) < 1e-12 * std::abs(z_opt));

  const double at_opt = efficiency(kLoop, kLoop, m, f, z_opt);
  CHECK(at_opt == approx(optimal_efficiency(kLoop, kLoop, m, f), 1e-12));
  CHECK(at_opt > 0.9);
  CHECK(at_opt < 1.0);

  // No sampled termination may beat the closed form.
  for (double rs : {0.5, 0.8, 0.9, 1.0, 1.1, 1.25, 2.0}) {
    for (double dx : {-5.0, -1.0, -0.1, 0.0, 0.1, 1.0, 5.0}) {
      const std::complex<double> z{z_opt.real() * rs, z_opt.imag() + dx};
      CHECK(efficiency(kLoop, kLoop, m, f, z) <= at_opt + 1e-15);
    }
  }
}

TEST_CASE("optimal termination stays the argmax for unequal resonators") {
  Resonator tx = kLoop;
  Resonator rx = kLoop;
  tx.resistance = 0.31;
  rx.resistance = 0.13;
  const double m = 2.1e-8;
  const double f = 40e6;

  const auto z_opt = optimal_load(tx, rx, m, f);
  const double at_opt = efficiency(tx, rx, m, f, z_opt);
  CHECK(at_opt == approx(optimal_efficiency(tx, rx, m, f), 1e-12));
  for (double rs : {0.7, 0.9, 0.99, 1.01, 1.1, 1.4}) {
    for (double dx : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
      const std::complex<double> z{z_opt.real() * rs, z_opt.imag() + dx};
      CHECK(efficiency(tx, rx, m, f, z) <= at_opt + 1e-15);
    }
  }
}

TEST_CASE("efficiency degrades away from resonance and with weak coupling") {
  const double m = mutual_inductance(0.09, 0.09, 0.10);
  const auto z_opt = optimal_load(kLoop, kLoop, m, 42.8e6);
  const double nominal = efficiency(kLoop, kLoop, m, 42.8e6, z_opt);

  // Same fixed load, detuned frequency.
  CHECK(efficiency(kLoop, kLoop, m, 38e6, z_opt) < nominal);
  CHECK(efficiency(kLoop, kLoop, m, 47e6, z_opt) < nominal);

  // Far pair couples weakly.
  const double m_far = mutual_inductance(0.09, 0.09, 0.5);
  CHECK(optimal_efficiency(kLoop, kLoop, m_far, 42.8e6) <
        0.2 * optimal_efficiency(kLoop, kLoop, m, 42.8e6));

  CHECK(efficiency(kLoop, kLoop, 0.0, 42.8e6, z_opt) == 0.0);
}

TEST_CASE("matched efficiency equals raw efficiency at conjugate match") {
  const double m = mutual_inductance(0.09, 0.09, 0.10);
  const double f = 42.8e6;
  const auto z_opt = optimal_load(kLoop, kLoop, m, f);
  const auto z_in = input_impedance(kLoop, kLoop, m, f, z_opt);

  const double eta = efficiency(kLoop, kLoop, m, f, z_opt);
  CHECK(matched_efficiency(kLoop, kLoop, m, f, z_opt, std::conj(z_in)) ==
        approx(eta, 1e-12));
  CHECK(matched_efficiency(kLoop, kLoop, m, f, z_opt, {50.0, 0.0}) < eta);
  CHECK_THROWS_AS(
      matched_efficiency(kLoop, kLoop, m, f, z_opt, {-1.0, 0.0}),
      std::invalid_argument);
}

TEST_CASE("l-network synthesis hits its design targets exactly") {
  const double f = 42.8e6;
  const std::complex<double> z_t{10.209, -15.328};

  const auto to_load = match_from_real(50.0, z_t, f);
  CHECK(to_load.shunt_at_termination);
  CHECK(to_load.shunt.kind == Element::Kind::capacitor);
  CHECK(to_load.series.kind == Element::Kind::inductor);
  CHECK(to_load.shunt.value == approx(1.4683e-10, 0.002));
  CHECK(to_load.series.value == approx(1.79533e-8, 0.002));
  CHECK(std::abs(to_load.transform({50.0, 0.0}, f) - z_t) <
        1e-12 * std::abs(z_t));

  const auto to_source = match_to_real(std::conj(z_t), 50.0, f);
  CHECK_FALSE(to_source.shunt_at_termination);
  CHECK(to_source.shunt.kind == Element::Kind::capacitor);
  CHECK(to_source.series.kind == Element::Kind::inductor);
  CHECK(to_source.shunt.value == approx(1.4683e-10, 0.002));
  CHECK(to_source.series.value == approx(1.79533e-8, 0.002));
  CHECK(std::abs(to_source.transform(std::conj(z_t), f) -
                 std::complex<double>{50.0, 0.0}) < 1e-12 * 50.0);

  CHECK_THROWS_AS(match_from_real(50.0, {60.0, 0.0}, f),
                  std::invalid_argument);
  CHECK_THROWS_AS(match_from_real(50.0, {0.0, 5.0}, f), std::invalid_argument);
  CHECK_THROWS_AS(match_to_real({60.0, 0.0}, 50.0, f), std::invalid_argument);
  CHECK_THROWS_AS(match_from_real(50.0, {10.0, 0.0}, -1.0),
                  std::invalid_argument);
}

TEST_CASE("element reactance tracks frequency") {
  const Element ind{Element::Kind::inductor, 1.0};
  const Element cap{Element::Kind::capacitor, 1.0};
  CHECK(ind.reactance(1.0) == approx(2.0 * pi, 1e-14));
  CHECK(cap.reactance(1.0) == approx(-1.0 / (2.0 * pi), 1e-14));
  CHECK(ind.reactance(2.0) == approx(2.0 * ind.reactance(1.0), 1e-14));
  CHECK(cap.reactance(2.0) == approx(0.5 * cap.reactance(1.0), 1e-14));
}

TEST_CASE("both-side match recovers the closed-form peak at the design point") {
  const double m = mutual_inductance(0.09, 0.09, 0.10);
  const double f = 42.8e6;
  const auto z_opt = optimal_load(kLoop, kLoop, m, f);
  const auto load_net = match_from_real(50.0, z_opt, f);
  const auto z_in = input_impedance(kLoop, kLoop, m, f,
                                    load_net.transform({50.0, 0.0}, f));
  const auto source_net = match_to_real(z_in, 50.0, f);

  const auto z_in_prime = source_net.transform(z_in, f);
  const auto gamma = (z_in_prime - 50.0) / (z_in_prime + 50.0);
  const double eta_prime =
      (1.0 - std::norm(gamma)) *
      efficiency(kLoop, kLoop, m, f, load_net.transform({50.0, 0.0}, f));
  CHECK(eta_prime == approx(optimal_efficiency(kLoop, kLoop, m, f), 1e-9));
}

TEST_CASE("half-power bandwidth of a sampled resonance curve") {
  std::vector<double> freq, val;
  for (double f = 30e6; f <= 55.001e6; f += 0.1e6) {
    freq.push_back(f);
    const double x = (f - 42e6) / 3e6;
    val.push_back(1.0 / (1.0 + x * x));
  }
  const auto bw = half_power_bandwidth(freq, val);
  CHECK(bw.f_peak == approx(42e6, 1e-9));
  CHECK(bw.peak == approx(1.0, 1e-12));
  CHECK(bw.f_low == approx(39e6, 1e-3));
  CHECK(bw.f_high == approx(45e6, 1e-3));
  CHECK(bw.bandwidth == approx(6e6, 1e-3));

  // Monotone data never crosses the half-power level on the left.
  std::vector<double> rising_f{1.0, 2.0, 3.0, 4.0};
  std::vector<double> rising_v{0.9, 0.95, 0.98, 1.0};
  CHECK_THROWS_AS(half_power_bandwidth(rising_f, rising_v),
                  std::runtime_error);
  CHECK_THROWS_AS(half_power_bandwidth(rising_f, {1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("the non-throwing bandwidth variant mirrors the throwing one") {
  std::vector<double> freq, val;
  for (double f = 30e6; f <= 55.001e6; f += 0.1e6) {
    freq.push_back(f);
    const double x = (f - 42e6) / 3e6;
    val.push_back(1.0 / (1.0 + x * x));
  }
  const auto bw = try_half_power_bandwidth(freq, val);
  REQUIRE(bw.has_value());
  CHECK(bw->bandwidth == approx(6e6, 1e-3));
  CHECK(bw->peak == approx(1.0, 1e-12));

  // A window too narrow to reach the half-power level reports no bandwidth
  // instead of throwing.
  std::vector<double> narrow_f, narrow_v;
  for (double f = 41e6; f <= 43.001e6; f += 0.1e6) {
    narrow_f.push_back(f);
    const double x = (f - 42e6) / 3e6;
    narrow_v.push_back(1.0 / (1.0 + x * x));
  }
  CHECK(!try_half_power_bandwidth(narrow_f, narrow_v).has_value());

  // Malformed input still throws.
  CHECK_THROWS_AS(try_half_power_bandwidth(narrow_f, {1.0, 2.0}),
                  std::invalid_argument);
}

namespace {

std::vector<double> frequency_grid(double start, double stop, double step) {
  std::vector<double> grid;
  for (double f = start; f <= stop + 0.5 * step; f += step)
    grid.push_back(f);
  return grid;
}

// Effective extra loss of a fixed feed run terminated by the loop's
// reactance, mirroring how the front end attaches feed loss to a sweep.
// The constants are those of a wide, low-impedance strip run, where the
// loop's reactance swing dwarfs the line impedance.
coupling::ExtraResistance feed_extra(double length) {
  return [length](double, double reactance) {
    const feedline::Line line{{0.0043, 0.907}, {17.128, -0.05}, length};
    return feedline::reff_exact(line, {0.0, reactance});
  };
}

// A stripline-flavored loop: feedless loss, with the loop's own feed run
// contributing through feed_extra instead.
const Resonator kStripLoop{0.14, 3.6415233e-7, 8.1671e-11};

}  // namespace

TEST_CASE("re-optimized sweep reduces to the closed-form optimum pointwise") {
  const double m = mutual_inductance(0.09, 0.09, 0.10);
  const auto grid = frequency_grid(36e6, 43e6, 0.5e6);
  const auto curve = matched_efficiency_sweep(kLoop, kLoop, m, grid);
  REQUIRE(curve.points.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& point = curve.points[i];
    CHECK(point.frequency == grid[i]);
    CHECK(point.eta ==
          approx(optimal_efficiency(kLoop, kLoop, m, grid[i]), 1e-12));
    CHECK(point.eta_prime == point.eta);
    const auto z_opt = optimal_load(kLoop, kLoop, m, grid[i]);
    CHECK(point.z_load.real() == approx(z_opt.real(), 1e-12));
    CHECK(point.z_load.imag() == approx(z_opt.imag(), 1e-12));
    CHECK(point.eta > 0.0);
    CHECK(point.eta < 1.0);
  }
  CHECK(curve.peak == approx(curve.points.back().eta, 1e-12));
  CHECK(curve.f_peak == grid.back());
}

TEST_CASE("without extra loss the matched curve is flat around resonance") {
  const double m = mutual_inductance(0.09, 0.09, 0.10);
  const double f0 = 39.305e6;
  const auto grid = frequency_grid(0.9 * f0, 1.1 * f0, 0.2e6);
  const auto curve = matched_efficiency_sweep(kLoop, kLoop, m, grid);
  double lo = 1.0, hi = 0.0;
  for (const auto& point : curve.points) {
    lo = std::min(lo, point.eta);
    hi = std::max(hi, point.eta);
  }
  // Re-optimizing the termination cancels the detuning, so only the slow
  // frequency dependence of the coupling figure remains.
  CHECK(hi - lo < 0.02 * hi);
  // With frequency-independent losses that residual trend is monotone.
  for (std::size_t i = 1; i < curve.points.size(); ++i)
    CHECK(curve.points[i].eta > curve.points[i - 1].eta);
}

TEST_CASE("feed loss bends the matched curve into an interior peak") {
  const double m = mutual_inductance(0.09, 0.09, 0.10);
  const auto grid = frequency_grid(18e6, 48e6, 0.25e6);
  const auto bare = matched_efficiency_sweep(kStripLoop, kStripLoop, m, grid);
  const auto fed = matched_efficiency_sweep(kStripLoop, kStripLoop, m, grid,
                                            feed_extra(0.2827433));

  // Loss only ever subtracts.
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(fed.points[i].eta < bare.points[i].eta);

  // The bare curve peaks at the band edge; the fed curve turns over inside
  // the band and falls off toward both edges.
  CHECK(bare.f_peak == grid.back());
  CHECK(fed.f_peak > grid.front());
  CHECK(fed.f_peak < grid.back());
  CHECK(fed.points.front().eta_prime < fed.peak - 1e-3);
  CHECK(fed.points.back().eta_prime < fed.peak - 1e-3);
}

TEST_CASE("a short feed run dominates a long one across the band") {
  const double m = mutual_inductance(0.09, 0.09, 0.10);
  // Same loops, one fed through a half-circumference run and one through the
  // short run of a slit moved to 10 degrees (with the correspondingly larger
  // capacitance).
  Resonator slit_shifted = kStripLoop;
  slit_shifted.capacitance *= 350.0 / 180.0;
  const auto grid = frequency_grid(18e6, 34e6, 0.2e6);
  const auto long_feed = matched_efficiency_sweep(
      kStripLoop, kStripLoop, m, grid, feed_extra(0.2827433));
  const auto short_feed = matched_efficiency_sweep(
      slit_shifted, slit_shifted, m, grid, feed_extra(0.0157080));
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(short_feed.points[i].eta_prime > long_feed.points[i].eta_prime);
}

TEST_CASE("uncoupled loops sweep to a zero curve") {
  const auto grid = frequency_grid(36e6, 43e6, 1e6);
  const auto curve = matched_efficiency_sweep(kLoop, kLoop, 0.0, grid);
  for (const auto& point : curve.points) {
    CHECK(point.eta == 0.0);
    CHECK(point.eta_prime == 0.0);
  }
  CHECK(curve.peak == 0.0);
  CHECK(!curve.half_power.has_value());
}

TEST_CASE("sweeps reject malformed grids and callbacks") {
  const double m = mutual_inductance(0.09, 0.09, 0.10);
  CHECK_THROWS_AS(matched_efficiency_sweep(kLoop, kLoop, m, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(matched_efficiency_sweep(kLoop, kLoop, m, {40e6, 39e6}),
                  std::invalid_argument);
  CHECK_THROWS_AS(matched_efficiency_sweep(kLoop, kLoop, m, {-1e6, 40e6}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      matched_efficiency_sweep(kLoop, kLoop, m, {40e6},
                               [](double, double) { return -0.1; }),
      std::invalid_argument);
  CHECK_THROWS_AS(
      lmatch_bandwidth(kLoop, kLoop, m, -42.8e6, {40e6, 41e6, 42e6}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      lmatch_bandwidth(kLoop, kLoop, m, 42.8e6, {40e6, 41e6, 42e6}, 0.0),
      std::invalid_argument);
  // A port resistance below the optimal load's real part cannot be matched.
  CHECK_THROWS_AS(
      lmatch_bandwidth(kLoop, kLoop, m, 42.8e6, {40e6, 41e6, 42e6}, 5.0),
      std::invalid_argument);
}

TEST_CASE("frozen matching networks reproduce the design-point optimum") {
  const double m = mutual_inductance(0.09, 0.09, 0.10);
  const double f_match = 42.8e6;
  const auto grid = frequency_grid(30e6, 55e6, 0.01e6);
  const auto curve = lmatch_bandwidth(kLoop, kLoop, m, f_match, grid);

  // The grid lands on the match frequency exactly.
  const std::size_t at = 1280;
  REQUIRE(curve.points[at].frequency == approx(f_match, 1e-12));

  // There the port is reflection-free, so both efficiencies coincide and
  // equal the closed-form optimum.
  const auto& match_point = curve.points[at];
  CHECK(match_point.eta_prime == approx(match_point.eta, 1e-10));
  CHECK(match_point.eta ==
        approx(optimal_efficiency(kLoop, kLoop, m, f_match), 1e-10));

  // Detuning only loses efficiency relative to the per-frequency bound.
  for (const auto& point : curve.points) {
    CHECK(point.eta_prime <= point.eta + 1e-15);
    CHECK(point.eta <=
          optimal_efficiency(kLoop, kLoop, m, point.frequency) + 1e-12);
  }

  CHECK(curve.peak >= 0.90);
  CHECK(std::abs(curve.f_peak - f_match) < 2e6);
  REQUIRE(curve.half_power.has_value());
  CHECK(curve.half_power->bandwidth > 3e6);
  CHECK(curve.half_power->bandwidth < 12e6);
}

TEST_CASE("lossier loops widen the matched bandwidth and lower the peak") {
  const double m = mutual_inductance(0.09, 0.09, 0.10);
  const double f_match = 42.8e6;
  const auto grid = frequency_grid(30e6, 55e6, 0.01e6);
  Resonator lossy = kLoop;
  lossy.resistance *= 3.0;
  const auto crisp = lmatch_bandwidth(kLoop, kLoop, m, f_match, grid);
  const auto soft = lmatch_bandwidth(lossy, lossy, m, f_match, grid);
  REQUIRE(crisp.half_power.has_value());
  REQUIRE(soft.half_power.has_value());
  CHECK(soft.peak < crisp.peak);
  CHECK(soft.half_power->bandwidth > crisp.half_power->bandwidth);
}

TEST_CASE("a window short of the half-power level reports no bandwidth") {
  const double m = mutual_inductance(0.09, 0.09, 0.10);
  const auto grid = frequency_grid(42.3e6, 43.3e6, 0.05e6);
  const auto curve = lmatch_bandwidth(kLoop, kLoop, m, 42.8e6, grid);
  CHECK(curve.peak > 0.90);
  CHECK(!curve.half_power.has_value());
}
