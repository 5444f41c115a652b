// SPDX-License-Identifier: Apache-2.0
#include "trap/tunneling.hpp"

#include <algorithm>
#include <cmath>

#include "trap/constants.hpp"

namespace trap {

const char* to_string(TunnelRegime regime) {
  switch (regime) {
    case TunnelRegime::tunneling: return "TUNNELING";
    case TunnelRegime::no_bound_pair: return "NO_BOUND_PAIR";
    case TunnelRegime::below_resolution: return "BELOW_RESOLUTION";
  }
  return "?";
}

namespace {

double grid_dot(std::span<const double> a, std::span<const double> b,
                double h) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * h;
}

void check_orthonormal(std::span<const double> phi0,
                       std::span<const double> phi1, const Grid1D& grid) {
  double h = grid.spacing();
  if (phi0.size() != phi1.size() ||
      phi0.size() != static_cast<std::size_t>(grid.n_points))
    throw std::invalid_argument("localized_states: size mismatch with grid");
  if (std::abs(grid_dot(phi0, phi0, h) - 1.0) > 1e-6 ||
      std::abs(grid_dot(phi1, phi1, h) - 1.0) > 1e-6 ||
      std::abs(grid_dot(phi0, phi1, h)) > 1e-6)
    throw std::invalid_argument(
        "localized_states: inputs not orthonormal to 1e-6");
}

double right_mass(std::span<const double> density, const Grid1D& grid) {
  double h = grid.spacing();
  int mid = grid.n_points / 2;  // zeta = 0, n_points odd
  double s = 0.5 * density[mid];
  for (int i = mid + 1; i < grid.n_points; ++i) s += density[i];
  return s * h;
}

}  // namespace

LocalizedPair localized_states(std::span<const double> phi0,
                               std::span<const double> phi1,
                               const Grid1D& grid) {
  grid.validate();
  check_orthonormal(phi0, phi1, grid);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  int n = grid.n_points;
  LocalizedPair pair;
  pair.right.resize(n);
  pair.left.resize(n);
  for (int i = 0; i < n; ++i) {
    pair.right[i] = inv_sqrt2 * (phi0[i] + phi1[i]);
    pair.left[i] = inv_sqrt2 * (phi0[i] - phi1[i]);
  }
  std::vector<double> dens(n);
  for (int i = 0; i < n; ++i) dens[i] = pair.right[i] * pair.right[i];
  if (right_mass(dens, grid) <= 0.5) {  // flip phi1's global sign
    for (int i = 0; i < n; ++i) {
      pair.right[i] = inv_sqrt2 * (phi0[i] - phi1[i]);
      pair.left[i] = inv_sqrt2 * (phi0[i] + phi1[i]);
    }
  }
  return pair;
}

TunnelingResult f_of_barrier(double eb_tilde, const Grid1D& grid) {
  EigenSolution sol = quartic_spectrum(eb_tilde, 2, grid);
  double e0 = sol.eigenvalues[0], e1 = sol.eigenvalues[1];
  TunnelingResult r;
  r.splitting_dimensionless = std::max(e1 - e0, 0.0);
  r.f_value = r.splitting_dimensionless;
  if (e1 >= 0.0)
    r.regime = TunnelRegime::no_bound_pair;
  else if (r.splitting_dimensionless < 1e-10 * std::abs(e0))
    r.regime = TunnelRegime::below_resolution;
  else
    r.regime = TunnelRegime::tunneling;
  return r;
}

TunnelingResult characterize_tunneling(double L_m, double Eb_J,
                                       const Grid1D& grid) {
  if (!(L_m > 0.0 && Eb_J > 0.0))
    throw std::domain_error(
        "characterize_tunneling: L and E_b must be positive");
  TunnelingResult r = f_of_barrier(dimensionless_barrier(Eb_J, L_m), grid);
  if (r.regime == TunnelRegime::tunneling)
    r.tunneling_frequency_Hz =
        r.f_value * constants::hbar /
        (4.0 * M_PI * constants::electron_mass * L_m * L_m);
  return r;
}

double tunneling_frequency(double L_m, double Eb_J, const Grid1D& grid) {
  TunnelingResult r = characterize_tunneling(L_m, Eb_J, grid);
  if (r.regime != TunnelRegime::tunneling)
    throw NoTunnelingError(
        std::string("tunneling_frequency: no tunneling frequency, regime ") +
            to_string(r.regime),
        r.regime);
  return *r.tunneling_frequency_Hz;
}

std::vector<FTableRow> tabulate_f(std::span<const double> eb_tilde_grid,
                                  const Grid1D& grid) {
  if (eb_tilde_grid.empty()) throw ConfigError("tabulate_f: empty grid");
  std::vector<FTableRow> rows;
  rows.reserve(eb_tilde_grid.size());
  for (double ebt : eb_tilde_grid) {
    if (!(ebt > 0.0)) throw ConfigError("tabulate_f: Eb~ must be positive");
    TunnelingResult r = f_of_barrier(ebt, grid);
    rows.push_back({ebt, r.f_value, r.regime});
  }
  return rows;
}

std::vector<double> two_level_density(std::span<const double> phi0,
                                      std::span<const double> phi1, double e0,
                                      double e1, double t, double hbar) {
  if (phi0.size() != phi1.size())
    throw std::invalid_argument("two_level_density: size mismatch");
  if (!(e1 > e0))
    throw std::invalid_argument("two_level_density: requires e1 > e0");
  double c = std::cos((e1 - e0) / hbar * t);
  std::vector<double> dens(phi0.size());
  for (std::size_t i = 0; i < phi0.size(); ++i)
    dens[i] = 0.5 * (phi0[i] * phi0[i] + phi1[i] * phi1[i] +
                     2.0 * phi0[i] * phi1[i] * c);
  return dens;
}

std::pair<double, double> well_populations(std::span<const double> density,
                                           const Grid1D& grid) {
  grid.validate();
  if (density.size() != static_cast<std::size_t>(grid.n_points))
    throw std::invalid_argument("well_populations: size mismatch with grid");
  double h = grid.spacing();
  int mid = grid.n_points / 2;
  double left = 0.5 * density[mid] * h, right = 0.5 * density[mid] * h;
  for (int i = 0; i < mid; ++i) left += density[i] * h;
  for (int i = mid + 1; i < grid.n_points; ++i) right += density[i] * h;
  if (std::abs(left + right - 1.0) > 1e-6)
    throw std::invalid_argument(
        "well_populations: input density is not normalized");
  return {left, right};
}

double WaveState::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s * grid.spacing());
}

std::vector<double> WaveState::density() const {
  std::vector<double> d(amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i)
    d[i] = std::norm(amplitudes[i]);
  return d;
}

std::pair<double, double> well_populations(const WaveState& state) {
  return well_populations(state.density(), state.grid);
}

namespace {

// Crank-Nicolson step machinery on the interior points. The factorization
// of A = 1 + i dt/2 H is Thomas elimination without pivoting; A is
// uniformly invertible (|diag| >= 1 along the imaginary axis).
struct CnWorkspace {
  int m = 0;
  double alpha = 0.0;  // dt / (2 h^2)
  // A's forward-elimination state: denominators and c' coefficients
  std::vector<double> den_re, den_im;   // 1/d_j
  std::vector<double> cp_re, cp_im;     // c'_j
  std::vector<double> bdiag_re, bdiag_im;  // B = 1 - i dt/2 H diagonal
  std::vector<double> yre, yim;

  void prepare(std::span<const double> potential_interior, double dt,
               double h) {
    m = static_cast<int>(potential_interior.size());
    alpha = 0.5 * dt / (h * h);
    den_re.resize(m);
    den_im.resize(m);
    cp_re.resize(m);
    cp_im.resize(m);
    bdiag_re.resize(m);
    bdiag_im.resize(m);
    yre.resize(m);
    yim.resize(m);
    // A diag = 1 + i dt/2 (2/h^2 + U); A off = -i dt/(2h^2) = -i alpha
    double prev_cp_re = 0.0, prev_cp_im = 0.0;
    for (int j = 0; j < m; ++j) {
      double are = 1.0;
      double aim = 0.5 * dt * (2.0 / (h * h) + potential_interior[j]);
      bdiag_re[j] = 1.0;
      bdiag_im[j] = -aim;
      double dre = are, dim = aim;
      if (j > 0) {
        // d_j = a_j - off * c'_{j-1}, off = -i alpha
        // off * c' = -i alpha (cpre + i cpim) = alpha cpim - i alpha cpre
        dre -= alpha * prev_cp_im;
        dim += alpha * prev_cp_re;
      }
      double inv = 1.0 / (dre * dre + dim * dim);
      den_re[j] = dre * inv;
      den_im[j] = -dim * inv;
      // c'_j = off / d_j = -i alpha (den_re + i den_im)
      prev_cp_re = alpha * den_im[j];
      prev_cp_im = -alpha * den_re[j];
      cp_re[j] = prev_cp_re;
      cp_im[j] = prev_cp_im;
    }
  }

  // advance interior amplitudes in place
  void step(double* re, double* im) {
    // rhs = B psi: diag (1 - i beta_j), off +i alpha
    // forward substitution fused with rhs evaluation
    double prev_yre = 0.0, prev_yim = 0.0;
    for (int j = 0; j < m; ++j) {
      double lre = j > 0 ? re[j - 1] : 0.0;
      double lim = j > 0 ? im[j - 1] : 0.0;
      double rre = j < m - 1 ? re[j + 1] : 0.0;
      double rim = j < m - 1 ? im[j + 1] : 0.0;
      // rhs = bdiag * psi_j + i alpha (psi_{j-1} + psi_{j+1})
      double sre = lre + rre, sim = lim + rim;
      double rhs_re = bdiag_re[j] * re[j] - bdiag_im[j] * im[j] - alpha * sim;
      double rhs_im = bdiag_re[j] * im[j] + bdiag_im[j] * re[j] + alpha * sre;
      if (j > 0) {
        // rhs -= off * y_{j-1} with off = -i alpha, i.e. rhs += i alpha y
        rhs_re -= alpha * prev_yim;
        rhs_im += alpha * prev_yre;
      }
      // y_j = rhs / d_j
      double yr = rhs_re * den_re[j] - rhs_im * den_im[j];
      double yi = rhs_re * den_im[j] + rhs_im * den_re[j];
      yre[j] = yr;
      yim[j] = yi;
      prev_yre = yr;
      prev_yim = yi;
    }
    // back substitution: x_j = y_j - c'_j x_{j+1}
    double nxt_re = yre[m - 1], nxt_im = yim[m - 1];
    re[m - 1] = nxt_re;
    im[m - 1] = nxt_im;
    for (int j = m - 2; j >= 0; --j) {
      double xr = yre[j] - (cp_re[j] * nxt_re - cp_im[j] * nxt_im);
      double xi = yim[j] - (cp_re[j] * nxt_im + cp_im[j] * nxt_re);
      re[j] = xr;
      im[j] = xi;
      nxt_re = xr;
      nxt_im = xi;
    }
  }
};

void check_propagation_inputs(const WaveState& initial,
                              std::span<const double> potential, double dt) {
  initial.grid.validate();
  if (initial.amplitudes.size() !=
      static_cast<std::size_t>(initial.grid.n_points))
    throw ConfigError("propagate: state size mismatch with grid");
  if (potential.size() != static_cast<std::size_t>(initial.grid.n_points))
    throw ConfigError("propagate: potential size mismatch with grid");
  if (!(dt > 0.0)) throw ConfigError("propagate: dt must be positive");
  double h = initial.grid.spacing();
  double umax = 0.0;
  for (double u : potential) umax = std::max(umax, std::abs(u));
  if (!(dt * (umax + 4.0 / (h * h)) < 0.5))
    throw ConfigError(
        "propagate: dt * (max|U| + 4/h^2) must stay below 0.5; reduce dt or "
        "coarsen the grid");
}

}  // namespace

WaveState propagate(const WaveState& initial,
                    std::span<const double> potential, double dt,
                    long n_steps) {
  check_propagation_inputs(initial, potential, dt);
  if (n_steps < 0) throw ConfigError("propagate: n_steps must be >= 0");
  int n = initial.grid.n_points;
  int m = n - 2;
  double h = initial.grid.spacing();

  std::vector<double> re(m), im(m);
  for (int j = 0; j < m; ++j) {
    re[j] = initial.amplitudes[j + 1].real();
    im[j] = initial.amplitudes[j + 1].imag();
  }
  CnWorkspace ws;
  ws.prepare(std::span<const double>(potential).subspan(1, m), dt, h);
  for (long s = 0; s < n_steps; ++s) ws.step(re.data(), im.data());

  WaveState out;
  out.grid = initial.grid;
  out.time = initial.time + dt * static_cast<double>(n_steps);
  out.amplitudes.assign(n, {0.0, 0.0});
  for (int j = 0; j < m; ++j) out.amplitudes[j + 1] = {re[j], im[j]};
  return out;
}

WaveState propagate(
    const WaveState& initial,
    const std::function<void(double, std::span<double>)>& potential_at,
    double dt, long n_steps) {
  if (n_steps < 0) throw ConfigError("propagate: n_steps must be >= 0");
  int n = initial.grid.n_points;
  std::vector<double> potential(n);
  WaveState state = initial;
  for (long s = 0; s < n_steps; ++s) {
    potential_at(state.time + 0.5 * dt, potential);
    state = propagate(state, potential, dt, 1);
  }
  return state;
}

}  // namespace trap
