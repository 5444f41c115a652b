// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace trap {

/// CODATA 2018 constants used throughout. All module boundaries exchange SI
/// units; electronvolts appear only at I/O edges.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;               // J s
  double electron_mass = 9.1093837015e-31;     // kg
  double elementary_charge = 1.602176634e-19;  // C, magnitude |e|
  double ev_per_joule = 1.0 / 1.602176634e-19;

  static const PhysicalConstants& codata2018() {
    static const PhysicalConstants c{};
    return c;
  }
};

namespace constants {
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double electron_mass = 9.1093837015e-31;
inline constexpr double elementary_charge = 1.602176634e-19;
inline constexpr double joule_per_ev = 1.602176634e-19;
}  // namespace constants

/// Natural energy unit hbar^2/(2 m L^2) of a well of distance L, in joules.
inline double energy_scale(double length_m) {
  if (!(length_m > 0.0))
    throw std::domain_error("energy_scale: length must be positive");
  return constants::hbar * constants::hbar /
         (2.0 * constants::electron_mass * length_m * length_m);
}

/// Barrier height in units of hbar^2/(2 m L^2).
inline double dimensionless_barrier(double barrier_J, double length_m) {
  if (!(barrier_J > 0.0))
    throw std::domain_error("dimensionless_barrier: barrier must be positive");
  return barrier_J / energy_scale(length_m);
}

inline double ev_to_joule(double x_ev) { return x_ev * constants::joule_per_ev; }
inline double joule_to_ev(double x_J) { return x_J / constants::joule_per_ev; }

}  // namespace trap
