// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "trap/eigensolver.hpp"
#include "trap/errors.hpp"

namespace trap {

enum class TunnelRegime {
  tunneling,         // bound pair below the barrier top
  no_bound_pair,     // e1 >= 0: the wells cannot hold the lowest pair
  below_resolution,  // splitting under 1e-10 |e0|, not resolvable in double
};

const char* to_string(TunnelRegime regime);

/// Splitting of the lowest pair of the canonical double well. f_value is
/// the dimensionless splitting e1 - e0 in units of hbar^2/2mL^2; the
/// physical rate is f * hbar/(4 pi m L^2).
struct TunnelingResult {
  double splitting_dimensionless = 0.0;
  double f_value = 0.0;
  std::optional<double> tunneling_frequency_Hz;  // set iff regime==tunneling
  TunnelRegime regime = TunnelRegime::tunneling;
};

/// Thrown when a tunneling frequency is requested outside the tunneling
/// regime; carries the regime that was found.
class NoTunnelingError : public Error {
 public:
  NoTunnelingError(const std::string& what, TunnelRegime regime)
      : Error(what), regime_(regime) {}
  TunnelRegime regime() const { return regime_; }

 private:
  TunnelRegime regime_;
};

/// Right/left localized superpositions (phi0 +- phi1)/sqrt(2); the sign of
/// phi1 is fixed so `right` really is right-localized.
struct LocalizedPair {
  std::vector<double> right;  // phi(+)
  std::vector<double> left;   // phi(-)
};

LocalizedPair localized_states(std::span<const double> phi0,
                               std::span<const double> phi1,
                               const Grid1D& grid);

/// Dimensionless tunneling law point: f(Eb~) with its regime. The physical
/// frequency stays unset (no length scale yet).
TunnelingResult f_of_barrier(double eb_tilde,
                             const Grid1D& grid = default_grid());

/// Full characterization of a physical well: f_of_barrier at the matching
/// dimensionless barrier, with tunneling_frequency_Hz filled in whenever
/// the regime allows one.
TunnelingResult characterize_tunneling(double L_m, double Eb_J,
                                       const Grid1D& grid = default_grid());

/// omega_10 / 2pi in Hz for a well of distance L and barrier E_b.
/// Throws NoTunnelingError outside the tunneling regime.
double tunneling_frequency(double L_m, double Eb_J,
                           const Grid1D& grid = default_grid());

struct FTableRow {
  double eb_tilde = 0.0;
  double f = 0.0;
  TunnelRegime regime = TunnelRegime::tunneling;
};

/// f over a barrier grid; deterministic row order.
std::vector<FTableRow> tabulate_f(std::span<const double> eb_tilde_grid,
                                  const Grid1D& grid = default_grid());

/// |Psi(z,t)|^2 of the equal superposition of (phi0, phi1), i.e. the
/// two-level oscillation density. hbar = 1 gives dimensionless time.
std::vector<double> two_level_density(std::span<const double> phi0,
                                      std::span<const double> phi1, double e0,
                                      double e1, double t, double hbar = 1.0);

/// (P_left, P_right) of a normalized density; the midpoint at zeta = 0 is
/// split evenly.
std::pair<double, double> well_populations(std::span<const double> density,
                                           const Grid1D& grid);

/// Complex wavefunction on a grid. Norm sum |psi|^2 h = 1. `time`
/// accumulates in whatever unit dt carries (dimensionless throughout this
/// library; callers convert to seconds at the I/O edge via 2mL^2/hbar).
struct WaveState {
  Grid1D grid;
  std::vector<std::complex<double>> amplitudes;
  double time = 0.0;

  double norm() const;
  std::vector<double> density() const;
};

std::pair<double, double> well_populations(const WaveState& state);

/// Crank-Nicolson propagation over n_steps of size dt (static potential,
/// factorization reused). Unitary up to roundoff; preconditions
/// dt > 0 and dt * (max|U| + 4/h^2) < 0.5.
WaveState propagate(const WaveState& initial, std::span<const double> potential,
                    double dt, long n_steps);

/// Time-dependent variant; `potential_at` fills U(t) sampled on the grid.
/// The Hamiltonian is evaluated at the midpoint of each step.
WaveState propagate(
    const WaveState& initial,
    const std::function<void(double, std::span<double>)>& potential_at,
    double dt, long n_steps);

}  // namespace trap
