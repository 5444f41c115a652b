// SPDX-License-Identifier: Apache-2.0
#include "trap/bessel.hpp"

#include <cmath>

namespace trap {
namespace {

// Minimal double-double arithmetic. Only what the series below needs.
struct Dd {
  double hi = 0.0, lo = 0.0;
};

inline Dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline Dd quick_two_sum(double a, double b) {  // requires |a| >= |b|
  double s = a + b;
  return {s, b - (s - a)};
}

inline Dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Dd dd_add(const Dd& a, const Dd& b) {
  Dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline Dd dd_mul(const Dd& a, const Dd& b) {
  Dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline Dd dd_div_d(const Dd& a, double b) {
  double q1 = a.hi / b;
  Dd p = two_prod(q1, b);
  double r = (a.hi - p.hi) - p.lo + a.lo;
  return quick_two_sum(q1, r / b);
}

inline Dd dd_neg(const Dd& a) { return {-a.hi, -a.lo}; }

// 2*pi and 3*pi/4 in double-double.
constexpr double kTwoPiHi = 6.283185307179586232e+00;
constexpr double kTwoPiLo = 2.449293598294706414e-16;
constexpr double kThreePiQuarterHi = 2.356194490192344837e+00;
constexpr double kThreePiQuarterLo = 9.1848509936051484375e-17;

// J1 by the ascending series, summed in double-double: the alternating terms
// reach ~1.1e6 at x=18 while J1 ~ 0.2, so plain doubles lose ~7 digits here.
double j1_series(double x) {
  Dd q = dd_div_d(two_prod(x, x), 4.0);  // x^2/4
  Dd term = {0.5 * x, 0.0};              // k = 0 term: x/2
  Dd sum = term;
  for (int k = 1; k < 200; ++k) {
    term = dd_div_d(dd_mul(term, q), static_cast<double>(k) * (k + 1));
    term = dd_neg(term);
    sum = dd_add(sum, term);
    if (std::abs(term.hi) < 1e-34 * std::abs(sum.hi) + 1e-320) break;
  }
  return sum.hi + sum.lo;
}

// Hankel expansion J1(x) = sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],
// chi = x - 3pi/4. The phase is reduced mod 2pi in double-double so the
// amplitude-relative error stays at machine level even for x ~ 1e6.
double j1_asymptotic(double x) {
  constexpr double kMu = 4.0;  // 4 nu^2 for nu = 1
  double p = 1.0, q = 0.0;
  double u = 1.0;
  double prev = 1.0;
  for (int j = 1; j < 40; ++j) {
    double odd = 2.0 * j - 1.0;
    u *= (kMu - odd * odd) / (8.0 * x * j);
    if (j % 2 == 1)
      q += (j % 4 == 1) ? u : -u;
    else
      p += (j % 4 == 2) ? -u : u;
    double au = std::abs(u);
    if (au < 1e-18) break;
    if (au > prev) break;  // asymptotic series started diverging
    prev = au;
  }

  double n = std::nearbyint(x / kTwoPiHi);
  Dd prod = two_prod(n, kTwoPiHi);
  Dd r = two_sum(x, -prod.hi);
  r.lo -= prod.lo + n * kTwoPiLo;
  Dd chi = dd_add(quick_two_sum(r.hi, r.lo),
                  {-kThreePiQuarterHi, -kThreePiQuarterLo});
  double c = std::cos(chi.hi) - chi.lo * std::sin(chi.hi);
  double s = std::sin(chi.hi) + chi.lo * std::cos(chi.hi);

  return std::sqrt(2.0 / (M_PI * x)) * (p * c - q * s);
}

}  // namespace

double bessel_j1(double x) {
  double ax = std::abs(x);
  double v = (ax <= 18.0) ? j1_series(ax) : j1_asymptotic(ax);
  return x < 0.0 ? -v : v;
}

}  // namespace trap
