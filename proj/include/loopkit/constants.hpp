#pragma once

#include <numbers>

namespace loopkit {

inline constexpr double pi = std::numbers::pi;

// Exact SI defining constants (2019 redefinition).
inline constexpr double speed_of_light = 299'792'458.0;            // m/s
inline constexpr double vacuum_permeability = 4.0e-7 * pi;         // H/m
inline constexpr double vacuum_permittivity =
    1.0 / (vacuum_permeability * speed_of_light * speed_of_light); // F/m
inline constexpr double free_space_impedance =
    vacuum_permeability * speed_of_light;                          // ohm, ~376.73

// Conductivity of annealed copper, S/m.
inline constexpr double copper_conductivity = 5.8e7;

} // namespace loopkit
