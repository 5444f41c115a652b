// SPDX-License-Identifier: Apache-2.0
#include "trap/electrostatics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "trap/bessel.hpp"
#include "trap/constants.hpp"
#include "trap/errors.hpp"
#include "trap/quadrature.hpp"
#include "trap/wells.hpp"

namespace trap {
namespace {

constexpr int kOrderLadder[] = {16, 32, 64, 128, 256};

struct KernelOptions {
  double rel_tol = 1e-10;      // successive order-doubling agreement
  double envelope_cut = 1e-14; // tail envelope relative to running integral
};

// tight settings for the finite-difference oracle, where stencil
// cancellation eats ~10 digits
constexpr KernelOptions kTightOptions{1e-13, 1e-16};

// Semi-infinite oscillatory integral: panels of half a J1 period, fixed
// Gauss order per pass, panel count chosen on the first pass from the decay
// envelope, then order doubled on the same panels until two estimates agree.
class TailIntegrator {
 public:
  TailIntegrator(double panel_width, double k_cap, KernelOptions opt)
      : width_(panel_width), cap_(k_cap), opt_(opt) {}

  double integrate(const std::function<double(double)>& g,
                   const std::function<double(double)>& envelope) {
    long n_panels = 0;
    {
      const GaussRule& rule = gauss_legendre(kOrderLadder[0]);
      double running = 0.0;
      double k_end = 0.0;
      while (true) {
        double mid = k_end + 0.5 * width_;
        double half = 0.5 * width_;
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
          acc += rule.weights[i] * g(mid + half * rule.nodes[i]);
        running += half * acc;
        k_end += width_;
        ++n_panels;
        double env = envelope(k_end);
        if (env < opt_.envelope_cut * std::abs(running) && n_panels >= 4) break;
        if (env < 1e-280) break;
        if (k_end >= cap_) break;
      }
      prev_ = running;
    }
    for (std::size_t level = 1; level < std::size(kOrderLadder); ++level) {
      double v = integrate_panels_fixed(g, 0.0, width_, n_panels,
                                        kOrderLadder[level]);
      double err = std::abs(v - prev_);
      achieved_ = err / std::max(std::abs(v),
                                 std::numeric_limits<double>::min());
      if (err <= opt_.rel_tol * std::abs(v)) return v;
      prev_ = v;
    }
    throw NumericalError(
        "oscillatory kernel quadrature did not converge to tolerance",
        achieved_);
  }

 private:
  double width_, cap_;
  KernelOptions opt_;
  double prev_ = 0.0;
  double achieved_ = 0.0;
};

// sinh[k(z - zc)]/sinh(k zc) without overflow; equals -exp(-k z) *
// expm1(-2k(zc-z)) / expm1(-2k zc).
inline double sinh_ratio(double k, double z, double zc) {
  if (k == 0.0) return -(zc - z) / zc;
  return -std::exp(-k * z) * std::expm1(-2.0 * k * (zc - z)) /
         std::expm1(-2.0 * k * zc);
}

// 1/cosh(y) for y >= 0 without overflow.
inline double sech(double y) {
  double e = std::exp(-y);
  return 2.0 * e / (1.0 + e * e);
}

// The raw kernel integrand decays only like exp(-k z), which is hopeless
// for z near the electrode plane. Split off the free-space image term,
// whose k-integral is closed form:
//   sinh(k(z-zc))/sinh(k zc) = -e^{-kz} + e^{-k(2zc-z)} expm1(-2kz)/expm1(-2k zc)
//   int_0^inf e^{-kz} J1(k r) dk = (1/r)(1 - z/sqrt(r^2+z^2))
// leaving a correction that decays like exp(-k(2zc-z)) uniformly in z.
double phi_kernel_impl(int electrode, double z, const TrapGeometry& geom,
                       KernelOptions opt) {
  geom.validate();
  if (electrode != 1 && electrode != 2)
    throw std::domain_error("phi_kernel: electrode index must be 1 or 2");
  double zc = geom.zc_tilde;
  if (!(z >= 0.0 && z <= zc))
    throw std::domain_error("phi_kernel: z_tilde outside [0, zc_tilde]");
  if (z == 0.0) return -1.0;  // integral of J1(k r)/r over k
  if (z == zc) return 0.0;    // sinh(0) kills the integrand

  double rt = electrode == 1 ? 1.0 : geom.r2_tilde;
  double leading = -(1.0 - z / std::hypot(rt, z));
  double decay = 2.0 * zc - z;  // >= zc over the whole slab
  double width = M_PI / std::max(geom.r2_tilde, 1.0);
  auto g = [&](double k) {
    if (k == 0.0) return 0.0;
    return rt * std::exp(-k * decay) * std::expm1(-2.0 * k * z) /
           std::expm1(-2.0 * k * zc) * bessel_j1(k * rt);
  };
  auto env = [&](double k) { return std::exp(-k * decay); };
  double correction = TailIntegrator(width, 1e5, opt).integrate(g, env);
  return leading + correction;
}

// moment p in {2, 4} of J1(k r~)/cosh(k zc~/2), including the prefactor of
// the matching expansion coefficient (r~/2 or r~/24)
double kernel_moment(int p, double rt, double zc, KernelOptions opt) {
  double pref = p == 4 ? rt / 24.0 : rt / 2.0;
  double half_zc = 0.5 * zc;
  double width = M_PI / std::max(rt, 1.0);
  auto g = [=](double k) {
    return pref * std::pow(k, p) * bessel_j1(k * rt) * sech(half_zc * k);
  };
  auto env = [=](double k) {
    return 2.0 * pref * std::pow(std::max(k, 1.0), p) * std::exp(-half_zc * k);
  };
  return TailIntegrator(width, 1e6, opt).integrate(g, env);
}

double axial_potential_impl(double z, const TrapGeometry& geom,
                            const VoltageSet& volt, KernelOptions opt) {
  volt.validate();
  double zc = geom.zc_tilde;
  double p1 = phi_kernel_impl(1, z, geom, opt) +
              phi_kernel_impl(1, zc - z, geom, opt);
  double p2 = phi_kernel_impl(2, z, geom, opt) +
              phi_kernel_impl(2, zc - z, geom, opt);
  return (volt.v2 - volt.v1) * p1 + (volt.v3 - volt.v2) * p2 + volt.v3;
}

}  // namespace

void TrapGeometry::validate() const {
  if (!(r1_m > 0.0))
    throw ConfigError("geometry: r1_m must be positive");
  if (!(r2_tilde > 1.0))
    throw ConfigError("geometry: r2_tilde must exceed 1 (ring encloses disk)");
  if (!(zc_tilde > 0.0))
    throw ConfigError("geometry: zc_tilde must be positive");
}

void VoltageSet::validate() const {
  if (!std::isfinite(v1) || !std::isfinite(v2) || !std::isfinite(v3))
    throw ConfigError("voltages: all of v1, v2, v3 must be finite");
}

double phi_kernel(int electrode, double z_tilde, const TrapGeometry& geom) {
  return phi_kernel_impl(electrode, z_tilde, geom, KernelOptions{});
}

double axial_potential(double z_tilde, const TrapGeometry& geom,
                       const VoltageSet& volt) {
  geom.validate();
  return axial_potential_impl(z_tilde, geom, volt, KernelOptions{});
}

double axial_energy(double z_tilde, const TrapGeometry& geom,
                    const VoltageSet& volt) {
  return -constants::elementary_charge * axial_potential(z_tilde, geom, volt);
}

ExpansionIntegrals expansion_integrals(const TrapGeometry& geom) {
  geom.validate();
  ExpansionIntegrals out;
  out.a1 = kernel_moment(4, 1.0, geom.zc_tilde, KernelOptions{});
  out.a2 = kernel_moment(4, geom.r2_tilde, geom.zc_tilde, KernelOptions{});
  out.b1 = kernel_moment(2, 1.0, geom.zc_tilde, KernelOptions{});
  out.b2 = kernel_moment(2, geom.r2_tilde, geom.zc_tilde, KernelOptions{});
  return out;
}

QuarticCoefficients quartic_coefficients(const TrapGeometry& geom,
                                         const VoltageSet& volt) {
  volt.validate();
  ExpansionIntegrals in = expansion_integrals(geom);
  double dv21 = volt.v2 - volt.v1;
  double dv32 = volt.v3 - volt.v2;
  QuarticCoefficients c;
  // U = -|e| V expanded about zc/2: the 4th-order term carries +|e|, the
  // 2nd-order term -|e| in the U = u0 + a d^4 - b d^2 convention.
  c.a = constants::elementary_charge * (dv21 * in.a1 + dv32 * in.a2);
  c.b = -constants::elementary_charge * (dv21 * in.b1 + dv32 * in.b2);
  c.u0 = axial_energy(0.5 * geom.zc_tilde, geom, volt);
  return c;
}

QuarticCoefficients quartic_fit(const TrapGeometry& geom,
                                const VoltageSet& volt) {
  geom.validate();
  volt.validate();
  constexpr double h = 1e-2;
  const double zc = geom.zc_tilde;
  const double c0 = 0.5 * zc;
  // stencil offsets: 0, +-h, +-2h, +-4h (base step h plus the doubled step
  // for Richardson; the finer h/2 companion would lose 16x more precision
  // to cancellation)
  const double off[7] = {0.0, h, -h, 2.0 * h, -2.0 * h, 4.0 * h, -4.0 * h};

  // One fused integrand per stencil point, all on a shared panel set, so
  // quadrature error is smooth in the offset and cancels in the differences.
  const double rt2 = geom.r2_tilde;
  const double dv21 = volt.v2 - volt.v1, dv32 = volt.v3 - volt.v2;
  auto integrand = [&](double z, double k) {
    double pair = sinh_ratio(k, z, zc) + sinh_ratio(k, zc - z, zc);
    return pair * (dv21 * bessel_j1(k) + dv32 * rt2 * bessel_j1(k * rt2));
  };
  const double width = M_PI / std::max(rt2, 1.0);
  const double decay_min = c0 - 4.0 * h;
  const long n_panels =
      static_cast<long>(std::ceil((40.0 / decay_min) / width));

  auto energies_at_order = [&](int order, double out[7]) {
    for (int i = 0; i < 7; ++i) {
      double z = c0 + off[i];
      double v = integrate_panels_fixed(
                     [&](double k) { return integrand(z, k); }, 0.0, width,
                     n_panels, order) +
                 volt.v3;
      out[i] = -constants::elementary_charge * v;
    }
  };
  const double conv_tol = 1e-13 * constants::elementary_charge *
                          (std::abs(volt.v1) + std::abs(volt.v2) + 1.0);
  double u[7], u_coarse[7];
  energies_at_order(64, u_coarse);
  energies_at_order(128, u);
  double max_diff = 0.0;
  for (int i = 0; i < 7; ++i)
    max_diff = std::max(max_diff, std::abs(u[i] - u_coarse[i]));
  if (max_diff > conv_tol) {
    std::copy(std::begin(u), std::end(u), std::begin(u_coarse));
    energies_at_order(256, u);
    max_diff = 0.0;
    for (int i = 0; i < 7; ++i)
      max_diff = std::max(max_diff, std::abs(u[i] - u_coarse[i]));
    if (max_diff > 10.0 * conv_tol)
      throw NumericalError("quartic_fit: stencil quadrature not converged",
                           max_diff / conv_tol * 1e-13);
  }

  const double u0 = u[0], uph = u[1], umh = u[2], up2h = u[3], um2h = u[4],
               up4h = u[5], um4h = u[6];
  double d2_h = (uph - 2.0 * u0 + umh) / (h * h);
  double d2_2h = (up2h - 2.0 * u0 + um2h) / (4.0 * h * h);
  double d2 = (4.0 * d2_h - d2_2h) / 3.0;

  double h4 = h * h * h * h;
  double d4_h = (up2h - 4.0 * uph + 6.0 * u0 - 4.0 * umh + um2h) / h4;
  double d4_2h =
      (up4h - 4.0 * up2h + 6.0 * u0 - 4.0 * um2h + um4h) / (16.0 * h4);
  // both difference operators are O(h^2) accurate
  double d4 = (4.0 * d4_h - d4_2h) / 3.0;

  // Cancellation handling. Below the ulp noise floor the derivative is an
  // honest zero (uniform voltages land here); within two decades of the
  // floor it is corrupted and refused; above that it is clean.
  double eps = std::numeric_limits<double>::epsilon();
  double mag = std::abs(u0);
  double noise2 = 4.0 * eps * mag / (h * h);
  double noise4 = 16.0 * eps * mag / h4;
  auto resolve = [](double d, double noise) {
    if (std::abs(d) <= noise) return 0.0;
    if (noise > 1e-2 * std::abs(d))
      throw NumericalError(
          "quartic_fit: central differences cancelled; coefficient is inside "
          "the floating-point noise band",
          noise / std::abs(d));
    return d;
  };
  d2 = resolve(d2, noise2);
  d4 = resolve(d4, noise4);

  QuarticCoefficients c;
  c.a = d4 / 24.0;
  c.b = -d2 / 2.0;
  c.u0 = u0;
  return c;
}

double transition_voltage(const TrapGeometry& geom, double v1, double v2) {
  ExpansionIntegrals in = expansion_integrals(geom);
  if (std::abs(in.b2) < 1e-14)
    throw ConfigError(
        "transition_voltage: |b2| below 1e-14, degenerate geometry");
  return (v2 * (in.b2 - in.b1) + v1 * in.b1) / in.b2;
}

std::vector<SweepRow> sweep_v3(const TrapGeometry& geom, double v1, double v2,
                               std::span<const double> v3_grid) {
  geom.validate();
  if (v3_grid.empty()) throw ConfigError("sweep_v3: empty v3 grid");
  ExpansionIntegrals in = expansion_integrals(geom);
  std::vector<SweepRow> rows;
  rows.reserve(v3_grid.size());
  for (double v3 : v3_grid) {
    VoltageSet volt{v1, v2, v3};
    volt.validate();
    double dv21 = v2 - v1, dv32 = v3 - v2;
    QuarticCoefficients c;
    c.a = constants::elementary_charge * (dv21 * in.a1 + dv32 * in.a2);
    c.b = -constants::elementary_charge * (dv21 * in.b1 + dv32 * in.b2);
    c.u0 = 0.0;  // the shape does not need the offset
    SweepRow row;
    row.v3 = v3;
    if (c.b > 0.0 && c.a > 0.0) {
      DoubleWellShape shape = shape_from_coefficients(c, geom.r1_m);
      row.regime = WellRegime::double_well;
      row.well_distance_m = shape.well_distance_m;
      row.barrier_height_J = shape.barrier_height_J;
      row.sub_quantum = sub_quantum_barrier(shape);
    } else {
      row.regime = WellRegime::single_well;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace trap
