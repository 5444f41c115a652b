// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <vector>

namespace trap {

/// Mirror-image planar trap geometry: two identical electrode planes
/// (central disk of radius r1, concentric ring of outer radius r2) facing
/// each other at separation zc. Lengths other than r1 are expressed in
/// units of r1.
struct TrapGeometry {
  double r1_m = 100e-6;    // central disk radius, meters
  double r2_tilde = 4.45;  // r2 / r1
  double zc_tilde = 5.6;   // zc / r1

  void validate() const;
};

/// Potentials applied to disk (v1), inner ring (v2) and outer ring (v3).
struct VoltageSet {
  double v1 = 0.0, v2 = 0.0, v3 = 0.0;

  void validate() const;
};

/// Quartic expansion of the electron potential energy about the trap
/// center, U(d) = u0 + a d^4 - b d^2 with d = z~ - zc~/2 dimensionless.
/// a and b are in joules; b > 0 is the double-well regime.
struct QuarticCoefficients {
  double a = 0.0;
  double b = 0.0;
  double u0 = 0.0;
};

/// Per-electrode geometry integrals entering the quartic coefficients.
/// Dimensionless; depend only on (r2_tilde, zc_tilde).
struct ExpansionIntegrals {
  double a1 = 0.0, a2 = 0.0;
  double b1 = 0.0, b2 = 0.0;
};

/// On-axis potential kernel of electrode i in {1, 2} at height z_tilde in
/// [0, zc_tilde]. phi_i(0) = -1 and phi_i(zc_tilde) = 0 exactly; interior
/// values by adaptive panel quadrature to 1e-10 relative.
double phi_kernel(int electrode, double z_tilde, const TrapGeometry& geom);

/// On-axis electrostatic potential in volts.
double axial_potential(double z_tilde, const TrapGeometry& geom,
                       const VoltageSet& volt);

/// Electron potential energy -|e| V(z_tilde) in joules.
double axial_energy(double z_tilde, const TrapGeometry& geom,
                    const VoltageSet& volt);

ExpansionIntegrals expansion_integrals(const TrapGeometry& geom);

/// Quartic coefficients from the expansion integrals, with the overall sign
/// fixed by the electron-energy convention U = -|e| V (so that b > 0 is a
/// double well). u0 is the on-axis energy at the trap center.
QuarticCoefficients quartic_coefficients(const TrapGeometry& geom,
                                         const VoltageSet& volt);

/// Independent oracle for quartic_coefficients: Richardson-extrapolated
/// 2nd/4th central differences of axial_energy about the center, step
/// h = 1e-2 dimensionless.
QuarticCoefficients quartic_fit(const TrapGeometry& geom,
                                const VoltageSet& volt);

/// The v3 at which b crosses zero (single- to double-well transition).
double transition_voltage(const TrapGeometry& geom, double v1, double v2);

enum class WellRegime { single_well, double_well };

struct SweepRow {
  double v3 = 0.0;
  std::optional<double> well_distance_m;
  std::optional<double> barrier_height_J;
  WellRegime regime = WellRegime::single_well;
  bool sub_quantum = false;  // double well with barrier below 1e-3 energy_scale(L)
};

/// Well shape as a function of v3 at fixed geometry and (v1, v2).
std::vector<SweepRow> sweep_v3(const TrapGeometry& geom, double v1, double v2,
                               std::span<const double> v3_grid);

}  // namespace trap
