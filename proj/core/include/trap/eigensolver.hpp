// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

namespace trap {

/// Uniform symmetric grid on [-half_width, +half_width], endpoints included.
/// Lengths in units of the well distance L; n_points odd so the origin is a
/// grid point and parity is testable.
struct Grid1D {
  double half_width = 2.0;
  int n_points = 4001;

  double spacing() const { return 2.0 * half_width / (n_points - 1); }
  double point(int i) const { return -half_width + i * spacing(); }
  void validate() const;
};

Grid1D default_grid();

/// Canonical double-well potential in units of hbar^2/2mL^2 and L:
/// Eb~ (16 z^4 - 8 z^2); minima -Eb~ at z = +-1/2, barrier top 0 at z = 0.
double dimensionless_quartic(double zeta, double eb_tilde);

/// Symmetric tridiagonal operator over the interior grid points.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // size diag.size() - 1
};

/// Second-order central-difference Hamiltonian -d2/dz2 + U with Dirichlet
/// walls; `potential` is sampled on the full grid (endpoints included).
SymTridiagonal build_hamiltonian(std::span<const double> potential,
                                 const Grid1D& grid);

struct EigenPairs {
  std::vector<double> values;                 // ascending
  std::vector<std::vector<double>> vectors;   // interior points, sum v^2 h = 1
};

/// k smallest eigenpairs by Sturm-sequence bisection plus inverse iteration;
/// eigenvalue counts are re-certified after the solve. For symmetric
/// potentials near-degenerate pairs are projected onto definite parity.
EigenPairs lowest_eigenpairs(const SymTridiagonal& matrix, int k,
                             double spacing = 1.0);

struct EigenSolution {
  Grid1D grid;
  std::vector<double> potential;    // full grid
  std::vector<double> eigenvalues;  // ascending, relative to the barrier top
  std::vector<std::vector<double>> eigenvectors;  // full grid, normalized
  std::string warning;  // non-empty when the domain looks too small
};

/// Spectrum of the canonical double well at barrier height eb_tilde.
EigenSolution quartic_spectrum(double eb_tilde, int k,
                               const Grid1D& grid = default_grid());

/// Sturm count: number of eigenvalues of `matrix` strictly below x.
int eigenvalues_below(const SymTridiagonal& matrix, double x);

}  // namespace trap
