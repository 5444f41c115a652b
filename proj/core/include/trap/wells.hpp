// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "trap/electrostatics.hpp"

namespace trap {

/// Physical double-well geometry derived from quartic coefficients.
/// The barrier height is independent of the trap size; the well distance
/// scales with the disk radius r1 used for the dimensionless expansion.
struct DoubleWellShape {
  double well_distance_m = 0.0;  // L, distance between the two minima
  double barrier_height_J = 0.0; // E_b
  double r1_scale_m = 0.0;       // r1 used in the dimensionless->physical map
};

/// L = r1 * 2 sqrt(b / 2a), E_b = b^2 / 4a.
/// Throws SingleWellError for b <= 0 and UnconfinedError for a <= 0.
DoubleWellShape shape_from_coefficients(const QuarticCoefficients& c,
                                        double r1_m);

/// Inverse map: a = 16 E_b (r1/L)^4, b = 8 E_b (r1/L)^2 (u0 = 0).
QuarticCoefficients coefficients_from_shape(double L_m, double Eb_J,
                                            double r1_m);

/// Small-oscillation frequency at either minimum, omega_z / 2pi in Hz,
/// with omega_z = (4/L) sqrt(2 E_b / m).
double classical_axial_frequency(const DoubleWellShape& shape);

/// Barrier below 1e-3 of the natural quantum energy scale hbar^2/2mL^2;
/// the well pair is then far too shallow to hold a bound state pair.
bool sub_quantum_barrier(const DoubleWellShape& shape);

/// Inverse-design target for solve_v3_for_shape.
struct WellTarget {
  enum class Kind { distance, barrier };
  Kind kind = Kind::distance;
  double value = 0.0;  // meters or joules
};

struct VoltageBracket {
  double lo = 0.0, hi = 0.0;
};

/// Bisect v3 below the transition voltage until the well matches the target
/// to 1e-6 relative (1e-10 V resolution floor). Default bracket is
/// [v3* - 0.1 V, v3*]. Throws ConfigError when the target is not bracketed
/// or the response is not monotone over the bracket.
double solve_v3_for_shape(const TrapGeometry& geom, double v1, double v2,
                          const WellTarget& target,
                          std::optional<VoltageBracket> bracket = {});

}  // namespace trap
