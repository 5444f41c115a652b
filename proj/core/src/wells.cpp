// SPDX-License-Identifier: Apache-2.0
#include "trap/wells.hpp"

#include <cmath>

#include "trap/constants.hpp"
#include "trap/errors.hpp"

namespace trap {

DoubleWellShape shape_from_coefficients(const QuarticCoefficients& c,
                                        double r1_m) {
  if (!(r1_m > 0.0))
    throw ConfigError("shape_from_coefficients: r1 must be positive");
  if (!(c.a > 0.0))
    throw UnconfinedError(
        "shape_from_coefficients: a <= 0, no quartic confinement");
  if (!(c.b > 0.0))
    throw SingleWellError(
        "shape_from_coefficients: b <= 0, single-well regime");
  DoubleWellShape s;
  s.well_distance_m = r1_m * 2.0 * std::sqrt(c.b / (2.0 * c.a));
  s.barrier_height_J = c.b * c.b / (4.0 * c.a);
  s.r1_scale_m = r1_m;
  return s;
}

QuarticCoefficients coefficients_from_shape(double L_m, double Eb_J,
                                            double r1_m) {
  if (!(L_m > 0.0 && Eb_J > 0.0 && r1_m > 0.0))
    throw ConfigError("coefficients_from_shape: L, E_b, r1 must be positive");
  double s = r1_m / L_m;
  QuarticCoefficients c;
  c.a = 16.0 * Eb_J * s * s * s * s;
  c.b = 8.0 * Eb_J * s * s;
  c.u0 = 0.0;
  return c;
}

double classical_axial_frequency(const DoubleWellShape& shape) {
  double omega =
      4.0 / shape.well_distance_m *
      std::sqrt(2.0 * shape.barrier_height_J / constants::electron_mass);
  return omega / (2.0 * M_PI);
}

bool sub_quantum_barrier(const DoubleWellShape& shape) {
  return shape.barrier_height_J < 1e-3 * energy_scale(shape.well_distance_m);
}

namespace {

// target quantity as a continuous function of v3; 0 in the single-well
// regime (both L and E_b vanish at the transition)
double well_quantity(const TrapGeometry& geom, const ExpansionIntegrals& in,
                     double v1, double v2, double v3, WellTarget::Kind kind) {
  double dv21 = v2 - v1, dv32 = v3 - v2;
  double a = constants::elementary_charge * (dv21 * in.a1 + dv32 * in.a2);
  double b = -constants::elementary_charge * (dv21 * in.b1 + dv32 * in.b2);
  if (!(b > 0.0) || !(a > 0.0)) return 0.0;
  if (kind == WellTarget::Kind::distance)
    return geom.r1_m * 2.0 * std::sqrt(b / (2.0 * a));
  return b * b / (4.0 * a);
}

}  // namespace

double solve_v3_for_shape(const TrapGeometry& geom, double v1, double v2,
                          const WellTarget& target,
                          std::optional<VoltageBracket> bracket) {
  geom.validate();
  if (!(target.value >= 0.0))
    throw ConfigError("solve_v3_for_shape: target must be non-negative");
  double vstar = transition_voltage(geom, v1, v2);
  if (target.value == 0.0) return vstar;  // limit case for either target

  VoltageBracket br = bracket.value_or(VoltageBracket{vstar - 0.1, vstar});
  if (!(br.lo < br.hi))
    throw ConfigError("solve_v3_for_shape: bracket must satisfy lo < hi");

  ExpansionIntegrals in = expansion_integrals(geom);
  auto quantity = [&](double v3) {
    return well_quantity(geom, in, v1, v2, v3, target.kind);
  };

  // the quantity must decrease towards the transition; sample a few points
  double probe[5];
  for (int i = 0; i < 5; ++i) {
    double v3 = br.lo + (br.hi - br.lo) * i / 4.0;
    probe[i] = quantity(v3);
  }
  for (int i = 1; i < 5; ++i) {
    if (probe[i] > probe[i - 1] * (1.0 + 1e-12))
      throw ConfigError(
          "solve_v3_for_shape: quantity not monotone over the bracket; "
          "ambiguous target");
  }
  if (!(target.value <= probe[0] && target.value >= probe[4]))
    throw ConfigError("solve_v3_for_shape: target not bracketed");

  double lo = br.lo, hi = br.hi;
  double rel_tol = 1e-6;
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    double q = quantity(mid);
    if (std::abs(q - target.value) <= rel_tol * target.value) return mid;
    if (q > target.value)
      lo = mid;  // too deep below transition, move up
    else
      hi = mid;
  }
  double mid = 0.5 * (lo + hi);
  if (std::abs(quantity(mid) - target.value) > rel_tol * target.value)
    throw NumericalError(
        "solve_v3_for_shape: voltage resolution floor reached before the "
        "target tolerance",
        std::abs(quantity(mid) - target.value) / target.value);
  return mid;
}

}  // namespace trap
