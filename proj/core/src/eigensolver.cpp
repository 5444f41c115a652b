// SPDX-License-Identifier: Apache-2.0
#include "trap/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "trap/errors.hpp"

namespace trap {

void Grid1D::validate() const {
  if (n_points < 3 || n_points % 2 == 0)
    throw ConfigError("grid: n_points must be odd and at least 3");
  if (!(half_width > 0.5))
    throw ConfigError("grid: half_width must exceed 0.5 (the minima)");
}

Grid1D default_grid() { return Grid1D{2.0, 4001}; }

double dimensionless_quartic(double zeta, double eb_tilde) {
  if (!(eb_tilde > 0.0))
    throw std::domain_error("dimensionless_quartic: Eb~ must be positive");
  double z2 = zeta * zeta;
  return eb_tilde * (16.0 * z2 * z2 - 8.0 * z2);
}

SymTridiagonal build_hamiltonian(std::span<const double> potential,
                                 const Grid1D& grid) {
  grid.validate();
  if (potential.size() != static_cast<std::size_t>(grid.n_points))
    throw ConfigError("build_hamiltonian: potential size != grid size");
  double h = grid.spacing();
  double inv_h2 = 1.0 / (h * h);
  int m = grid.n_points - 2;
  SymTridiagonal t;
  t.diag.resize(m);
  t.off.assign(m - 1, -inv_h2);
  for (int j = 0; j < m; ++j) t.diag[j] = 2.0 * inv_h2 + potential[j + 1];
  return t;
}

namespace {

double gersh_lo(const SymTridiagonal& t) {
  double lo = std::numeric_limits<double>::infinity();
  int m = static_cast<int>(t.diag.size());
  for (int j = 0; j < m; ++j) {
    double r = (j > 0 ? std::abs(t.off[j - 1]) : 0.0) +
               (j < m - 1 ? std::abs(t.off[j]) : 0.0);
    lo = std::min(lo, t.diag[j] - r);
  }
  return lo;
}

double gersh_hi(const SymTridiagonal& t) {
  double hi = -std::numeric_limits<double>::infinity();
  int m = static_cast<int>(t.diag.size());
  for (int j = 0; j < m; ++j) {
    double r = (j > 0 ? std::abs(t.off[j - 1]) : 0.0) +
               (j < m - 1 ? std::abs(t.off[j]) : 0.0);
    hi = std::max(hi, t.diag[j] + r);
  }
  return hi;
}

double pivmin_of(const SymTridiagonal& t) {
  double e2max = 0.0;
  for (double e : t.off) e2max = std::max(e2max, e * e);
  return std::numeric_limits<double>::min() * std::max(1.0, e2max);
}

int sturm_count(const SymTridiagonal& t, double x, double pivmin) {
  int count = 0;
  double q = 1.0;
  int m = static_cast<int>(t.diag.size());
  for (int j = 0; j < m; ++j) {
    double e2 = j > 0 ? t.off[j - 1] * t.off[j - 1] : 0.0;
    q = t.diag[j] - x - (j > 0 ? e2 / q : 0.0);
    if (std::abs(q) <= pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

// smallest eigenvalue index `idx` (0-based) by bisection on the count
double bisect_eigenvalue(const SymTridiagonal& t, int idx, double lo,
                         double hi, double pivmin) {
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (sturm_count(t, mid, pivmin) > idx)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <=
        2.0 * std::numeric_limits<double>::epsilon() *
            (std::abs(lo) + std::abs(hi)) +
            2.0 * pivmin)
      break;
  }
  return 0.5 * (lo + hi);
}

// deterministic start vectors for inverse iteration
struct Lcg {
  std::uint64_t s;
  double next() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(s >> 11) / 9007199254740992.0 - 0.5;
  }
};

// LU with partial pivoting for (T - sigma I); three bands plus fill-in
struct TridiagFactor {
  std::vector<double> d, u1, u2, l;  // diag, two superdiagonals, multipliers
  std::vector<int> piv;              // 1 if rows swapped at step j

  void factor(const SymTridiagonal& t, double sigma) {
    int m = static_cast<int>(t.diag.size());
    d.resize(m);
    u1.assign(m, 0.0);
    u2.assign(m, 0.0);
    l.assign(m, 0.0);
    piv.assign(m, 0);
    for (int j = 0; j < m; ++j) d[j] = t.diag[j] - sigma;
    for (int j = 0; j + 1 < m; ++j) u1[j] = t.off[j];
    // forward elimination on rows j, j+1
    for (int j = 0; j + 1 < m; ++j) {
      double sub = t.off[j];  // entry (j+1, j) before elimination
      if (std::abs(sub) > std::abs(d[j])) {
        piv[j] = 1;  // swap rows j and j+1
        std::swap(d[j], sub);
        double tmp = u1[j];
        u1[j] = d[j + 1];
        d[j + 1] = tmp;
        u2[j] = (j + 2 < m) ? u1[j + 1] : 0.0;
        if (j + 2 < m) u1[j + 1] = 0.0;
      }
      if (d[j] == 0.0) d[j] = pivtiny_;
      double mul = sub / d[j];
      l[j] = mul;
      d[j + 1] -= mul * u1[j];
      if (j + 2 < m) u1[j + 1] -= mul * u2[j];
    }
    if (d[m - 1] == 0.0) d[m - 1] = pivtiny_;
  }

  void solve(std::vector<double>& x) const {
    int m = static_cast<int>(d.size());
    for (int j = 0; j + 1 < m; ++j) {
      if (piv[j]) std::swap(x[j], x[j + 1]);
      x[j + 1] -= l[j] * x[j];
    }
    for (int j = m - 1; j >= 0; --j) {
      double v = x[j];
      if (j + 1 < m) v -= u1[j] * x[j + 1];
      if (j + 2 < m) v -= u2[j] * x[j + 2];
      x[j] = v / d[j];
    }
  }

  double pivtiny_ = 1e-280;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

std::vector<double> mat_vec(const SymTridiagonal& t,
                          const std::vector<double>& v) {
  int m = static_cast<int>(t.diag.size());
  std::vector<double> w(m);
  for (int j = 0; j < m; ++j) {
    double s = t.diag[j] * v[j];
    if (j > 0) s += t.off[j - 1] * v[j - 1];
    if (j < m - 1) s += t.off[j] * v[j + 1];
    w[j] = s;
  }
  return w;
}

bool potential_symmetric(const SymTridiagonal& t) {
  int m = static_cast<int>(t.diag.size());
  double scale = 0.0;
  for (double v : t.diag) scale = std::max(scale, std::abs(v));
  for (int j = 0; j < m / 2; ++j)
    if (std::abs(t.diag[j] - t.diag[m - 1 - j]) > 1e-12 * scale) return false;
  return true;
}

}  // namespace

int eigenvalues_below(const SymTridiagonal& matrix, double x) {
  return sturm_count(matrix, x, pivmin_of(matrix));
}

EigenPairs lowest_eigenpairs(const SymTridiagonal& matrix, int k,
                             double spacing) {
  int m = static_cast<int>(matrix.diag.size());
  if (k < 1 || k > m)
    throw ConfigError("lowest_eigenpairs: k out of range");
  double pivmin = pivmin_of(matrix);
  double lo = gersh_lo(matrix), hi = gersh_hi(matrix);
  double span = hi - lo;

  EigenPairs out;
  out.values.resize(k);
  for (int i = 0; i < k; ++i)
    out.values[i] = bisect_eigenvalue(matrix, i, lo, hi, pivmin);
  std::sort(out.values.begin(), out.values.end());

  // certification: exactly i+1 eigenvalues below lambda_i + gap
  for (int i = 0; i < k; ++i) {
    double gap = 64.0 * std::numeric_limits<double>::epsilon() *
                     (std::abs(out.values[i]) + span) +
                 2.0 * pivmin;
    if (sturm_count(matrix, out.values[i] + gap, pivmin) < i + 1 ||
        sturm_count(matrix, out.values[i] - gap, pivmin) > i)
      throw NumericalError(
          "lowest_eigenpairs: Sturm count certification failed", gap);
  }

  // inverse iteration
  double eps3 = std::numeric_limits<double>::epsilon() * span;
  out.vectors.resize(k);
  for (int i = 0; i < k; ++i) {
    TridiagFactor lu;
    lu.factor(matrix, out.values[i] + eps3);
    bool ok = false;
    for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
      Lcg rng{0x9E3779B97F4A7C15ULL ^
              (static_cast<std::uint64_t>(i) * 0x100000001B3ULL + attempt)};
      std::vector<double> x(m);
      for (double& v : x) v = rng.next();
      for (int it = 0; it < 5; ++it) {
        lu.solve(x);
        for (int j = 0; j < i; ++j)
          axpy(-dot(x, out.vectors[j]), out.vectors[j], x);
        double n = norm2(x);
        if (!(n > 0.0) || !std::isfinite(n)) break;
        for (double& v : x) v /= n;
      }
      std::vector<double> r = mat_vec(matrix, x);
      axpy(-out.values[i], x, r);
      double res = norm2(r);
      double tol = 1e4 * std::numeric_limits<double>::epsilon() *
                   std::max(std::abs(hi), std::abs(lo));
      if (res <= tol && std::isfinite(res)) {
        out.vectors[i] = std::move(x);
        ok = true;
      }
    }
    if (!ok)
      throw NumericalError(
          "lowest_eigenpairs: inverse iteration failed to converge", 0.0);
  }

  // parity projection restores the even/odd structure that inverse
  // iteration mixes within near-degenerate pairs
  if (potential_symmetric(matrix)) {
    int i = 0;
    while (i < k) {
      double gap_next =
          (i + 1 < k) ? out.values[i + 1] - out.values[i]
                      : std::numeric_limits<double>::infinity();
      bool clustered =
          gap_next <= 1e-2 * std::max(1.0, std::abs(out.values[i]));
      auto even_part = [&](const std::vector<double>& v) {
        std::vector<double> e(m);
        for (int j = 0; j < m; ++j) e[j] = 0.5 * (v[j] + v[m - 1 - j]);
        return e;
      };
      auto odd_part = [&](const std::vector<double>& v) {
        std::vector<double> o(m);
        for (int j = 0; j < m; ++j) o[j] = 0.5 * (v[j] - v[m - 1 - j]);
        return o;
      };
      if (clustered && i + 1 < k) {
        // lower member of a symmetric pair is even, upper is odd
        std::vector<double> e0 = even_part(out.vectors[i]);
        std::vector<double> e1 = even_part(out.vectors[i + 1]);
        std::vector<double> o0 = odd_part(out.vectors[i]);
        std::vector<double> o1 = odd_part(out.vectors[i + 1]);
        std::vector<double>& e = norm2(e0) >= norm2(e1) ? e0 : e1;
        std::vector<double>& o = norm2(o0) >= norm2(o1) ? o0 : o1;
        double ne = norm2(e), no = norm2(o);
        if (ne > 1e-8 && no > 1e-8) {
          for (double& v : e) v /= ne;
          for (double& v : o) v /= no;
          out.vectors[i] = e;
          out.vectors[i + 1] = o;
        }
        i += 2;
      } else {
        std::vector<double> e = even_part(out.vectors[i]);
        std::vector<double> o = odd_part(out.vectors[i]);
        std::vector<double>& p = norm2(e) >= norm2(o) ? e : o;
        double n = norm2(p);
        if (n > 1e-8) {
          for (double& v : p) v /= n;
          out.vectors[i] = p;
        }
        ++i;
      }
    }
  }

  // final orthonormalization in the grid inner product and sign pinning
  for (int i = 0; i < k; ++i) {
    auto& v = out.vectors[i];
    for (int j = 0; j < i; ++j)
      axpy(-spacing * dot(v, out.vectors[j]) /
               (spacing * dot(out.vectors[j], out.vectors[j])),
           out.vectors[j], v);
    double n = std::sqrt(spacing) * norm2(v);
    for (double& x : v) x /= n;
    int imax = 0;
    for (int j = 0; j < m; ++j)
      if (std::abs(v[j]) > std::abs(v[imax])) imax = j;
    if (v[imax] < 0.0)
      for (double& x : v) x = -x;
  }
  return out;
}

EigenSolution quartic_spectrum(double eb_tilde, int k, const Grid1D& grid) {
  grid.validate();
  if (!(eb_tilde > 0.0))
    throw std::domain_error("quartic_spectrum: Eb~ must be positive");
  if (k < 1) throw ConfigError("quartic_spectrum: k must be at least 1");

  EigenSolution sol;
  sol.grid = grid;
  sol.potential.resize(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i)
    sol.potential[i] = dimensionless_quartic(grid.point(i), eb_tilde);

  SymTridiagonal t = build_hamiltonian(sol.potential, grid);
  EigenPairs pairs = lowest_eigenpairs(t, k, grid.spacing());
  sol.eigenvalues = std::move(pairs.values);
  sol.eigenvectors.resize(k);
  for (int i = 0; i < k; ++i) {
    auto& full = sol.eigenvectors[i];
    full.assign(grid.n_points, 0.0);
    std::copy(pairs.vectors[i].begin(), pairs.vectors[i].end(),
              full.begin() + 1);
  }

  double wall = dimensionless_quartic(grid.half_width, eb_tilde);
  if (sol.eigenvalues.back() > wall - 10.0)
    sol.warning =
        "highest requested level is within 10 energy units of the domain "
        "wall; enlarge half_width";
  return sol;
}

}  // namespace trap
