#include "loopkit/tline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace loopkit::tline {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument("tline: " + message);
}

void validate(const Stripline& s) {
  require(std::isfinite(s.width) && s.width > 0.0,
          "stripline width must be positive");
  require(std::isfinite(s.ground_spacing) && s.ground_spacing > 0.0,
          "stripline ground spacing must be positive");
  require(std::isfinite(s.thickness) && s.thickness >= 0.0,
          "stripline thickness must be non-negative");
  require(s.thickness < s.ground_spacing,
          "stripline thickness must be smaller than the ground spacing");
}

void validate(const Microstrip& m) {
  require(std::isfinite(m.width) && m.width > 0.0,
          "microstrip width must be positive");
  require(std::isfinite(m.substrate_height) && m.substrate_height > 0.0,
          "microstrip substrate height must be positive");
  require(std::isfinite(m.thickness) && m.thickness >= 0.0,
          "microstrip thickness must be non-negative");
}

void validate(const Coax& c) {
  require(std::isfinite(c.inner_radius) && c.inner_radius > 0.0,
          "coax inner radius must be positive");
  require(std::isfinite(c.outer_radius) && c.outer_radius > c.inner_radius,
          "coax outer radius must exceed the inner radius");
}

void validate(const CrossSection& cs) {
  std::visit([](const auto& g) { validate(g); }, cs);
}

void validate(const Dielectric& d) {
  require(std::isfinite(d.eps_r) && d.eps_r >= 1.0,
          "relative permittivity must be at least 1");
  require(std::isfinite(d.loss_tangent) && d.loss_tangent >= 0.0,
          "loss tangent must be non-negative");
}

void validate(const Conductor& c) {
  require(std::isfinite(c.conductivity) && c.conductivity > 0.0,
          "conductivity must be positive");
}

// Wheeler's closed-form impedance of a centered rectangular strip between
// ground planes, including the finite-thickness width correction.
double stripline_z0(double w, double b, double t, double eps_r) {
  double w_eff = w;
  if (t > 0.0) {
    const double m = 6.0 * (b - t) / (3.0 * b - t);
    const double edge = t / (2.0 * b - t);
    const double taper = 0.0796 * t / (w + 1.1 * t);
    w_eff += (t / pi) *
             (1.0 - 0.5 * std::log(edge * edge + std::pow(taper, m)));
  }
  const double a = (8.0 / pi) * (b - t) / w_eff;
  return (30.0 / std::sqrt(eps_r)) *
         std::log(1.0 + 0.5 * a * (a + std::sqrt(a * a + 6.27)));
}

// Hammerstad-Jensen normalized impedance of a zero-thickness strip of
// normalized width u = w/h in free space.
double hj_z01(double u) {
  const double fu =
      6.0 + (2.0 * pi - 6.0) * std::exp(-std::pow(30.666 / u, 0.7528));
  return (free_space_impedance / (2.0 * pi)) *
         std::log(fu / u + std::sqrt(1.0 + (2.0 / u) * (2.0 / u)));
}

// Hammerstad-Jensen effective permittivity of a zero-thickness strip.
double hj_eps_eff(double u, double eps_r) {
  const double u4 = u * u * u * u;
  const double a = 1.0 +
                   std::log((u4 + std::pow(u / 52.0, 2)) / (u4 + 0.432)) / 49.0 +
                   std::log(1.0 + std::pow(u / 18.1, 3)) / 18.7;
  const double b = 0.564 * std::pow((eps_r - 0.9) / (eps_r + 3.0), 0.053);
  return 0.5 * (eps_r + 1.0) +
         0.5 * (eps_r - 1.0) * std::pow(1.0 + 10.0 / u, -a * b);
}

StaticParams microstrip_params(double w, double h, double t, double eps_r) {
  const double u = w / h;
  double du1 = 0.0;
  double dur = 0.0;
  if (t > 0.0) {
    const double tau = t / h;
    const double coth = 1.0 / std::tanh(std::sqrt(6.517 * u));
    du1 = (tau / pi) *
          std::log(1.0 + 4.0 * std::exp(1.0) / (tau * coth * coth));
    dur = 0.5 * du1 * (1.0 + 1.0 / std::cosh(std::sqrt(eps_r - 1.0)));
  }
  const double u1 = u + du1;
  const double ur = u + dur;
  const double z01_u1 = hj_z01(u1);
  const double z01_ur = hj_z01(ur);
  const double eps_ur = hj_eps_eff(ur, eps_r);
  const double ratio = z01_u1 / z01_ur;
  return {z01_ur / std::sqrt(eps_ur), eps_ur * ratio * ratio};
}

StaticParams coax_params(double rin, double rout, double eps_r) {
  return {free_space_impedance / (2.0 * pi * std::sqrt(eps_r)) *
              std::log(rout / rin),
          eps_r};
}

StaticParams static_params_unchecked(const CrossSection& cs, double eps_r) {
  return std::visit(
      overloaded{
          [&](const Stripline& s) {
            return StaticParams{
                stripline_z0(s.width, s.ground_spacing, s.thickness, eps_r),
                eps_r};
          },
          [&](const Microstrip& m) {
            return microstrip_params(m.width, m.substrate_height, m.thickness,
                                     eps_r);
          },
          [&](const Coax& c) {
            return coax_params(c.inner_radius, c.outer_radius, eps_r);
          },
      },
      cs);
}

double smallest_dimension(const CrossSection& cs) {
  return std::visit(
      overloaded{
          [](const Stripline& s) {
            const double gap = 0.5 * (s.ground_spacing - s.thickness);
            return std::min({s.width, s.thickness, gap});
          },
          [](const Microstrip& m) {
            return std::min({m.width, m.substrate_height, m.thickness});
          },
          [](const Coax& c) {
            return std::min(c.inner_radius, c.outer_radius - c.inner_radius);
          },
      },
      cs);
}

// Cross-section with every conducting wall receded into its conductor by
// `depth` (negative values advance the walls instead).
CrossSection receded(const CrossSection& cs, double depth) {
  return std::visit(
      overloaded{
          [&](const Stripline& s) {
            return CrossSection{Stripline{s.width - 2.0 * depth,
                                          s.ground_spacing + 2.0 * depth,
                                          s.thickness - 2.0 * depth}};
          },
          [&](const Microstrip& m) {
            return CrossSection{Microstrip{m.width - 2.0 * depth,
                                           m.substrate_height + 2.0 * depth,
                                           m.thickness - 2.0 * depth}};
          },
          [&](const Coax& c) {
            return CrossSection{
                Coax{c.inner_radius - depth, c.outer_radius + depth}};
          },
      },
      cs);
}

}  // namespace

StaticParams static_params(const CrossSection& cs, const Dielectric& diel) {
  validate(cs);
  validate(diel);
  return static_params_unchecked(cs, diel.eps_r);
}

double sheet_resistance(double frequency, double conductivity) {
  require(std::isfinite(frequency) && frequency > 0.0,
          "frequency must be positive");
  require(std::isfinite(conductivity) && conductivity > 0.0,
          "conductivity must be positive");
  return std::sqrt(pi * frequency * vacuum_permeability / conductivity);
}

double conductor_attenuation(const CrossSection& cs, const Dielectric& diel,
                             const Conductor& cond, double frequency,
                             double step_scale) {
  validate(cs);
  validate(diel);
  validate(cond);
  require(std::isfinite(frequency) && frequency > 0.0,
          "frequency must be positive");
  require(std::isfinite(step_scale) && step_scale > 0.0 && step_scale < 0.5,
          "step scale must lie in (0, 0.5)");
  if (const auto* s = std::get_if<Stripline>(&cs); s && s->thickness <= 0.0)
    throw std::invalid_argument(
        "tline: conductor loss requires a nonzero strip thickness");
  if (const auto* m = std::get_if<Microstrip>(&cs); m && m->thickness <= 0.0)
    throw std::invalid_argument(
        "tline: conductor loss requires a nonzero strip thickness");

  const auto nominal = static_params_unchecked(cs, diel.eps_r);
  const double step = step_scale * smallest_dimension(cs);
  const double z_plus = static_params_unchecked(receded(cs, step), diel.eps_r).z0;
  const double z_minus =
      static_params_unchecked(receded(cs, -step), diel.eps_r).z0;
  const double dz0_dl = (z_plus - z_minus) / (2.0 * step);

  const double rs = sheet_resistance(frequency, cond.conductivity);
  const double wave_impedance =
      free_space_impedance / std::sqrt(nominal.eps_eff);
  return rs * dz0_dl / (2.0 * nominal.z0 * wave_impedance);
}

double dielectric_attenuation(double frequency, double eps_eff,
                              double loss_tangent) {
  require(std::isfinite(frequency) && frequency > 0.0,
          "frequency must be positive");
  require(std::isfinite(eps_eff) && eps_eff >= 1.0,
          "effective permittivity must be at least 1");
  require(std::isfinite(loss_tangent) && loss_tangent >= 0.0,
          "loss tangent must be non-negative");
  const double beta =
      2.0 * pi * frequency * std::sqrt(eps_eff) / speed_of_light;
  return 0.5 * beta * loss_tangent;
}

LineParams analyze(const CrossSection& cs, const Dielectric& diel,
                   const Conductor& cond, double frequency,
                   double step_scale) {
  const auto sp = static_params(cs, diel);
  LineParams p;
  p.frequency = frequency;
  p.z0 = sp.z0;
  p.eps_eff = sp.eps_eff;
  p.alpha_c = conductor_attenuation(cs, diel, cond, frequency, step_scale);
  p.alpha_d = dielectric_attenuation(frequency, sp.eps_eff, diel.loss_tangent);
  p.c_per_m = std::sqrt(sp.eps_eff) / (speed_of_light * sp.z0);
  p.l_per_m = sp.z0 * sp.z0 * p.c_per_m;
  p.r_per_m = 2.0 * p.alpha_c * sp.z0;
  p.g_per_m = 2.0 * p.alpha_d / sp.z0;

  const double omega = 2.0 * pi * frequency;
  const std::complex<double> series{p.r_per_m, omega * p.l_per_m};
  const std::complex<double> shunt{p.g_per_m, omega * p.c_per_m};
  p.gamma = std::sqrt(series * shunt);
  p.z0_complex = std::sqrt(series / shunt);
  return p;
}

}  // namespace loopkit::tline
