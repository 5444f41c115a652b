// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace trap {

/// Bessel function of the first kind J1(x).
///
/// Ascending power series (double-double accumulation) for |x| <= 18,
/// Hankel asymptotic expansion with extended-precision argument reduction
/// above. Relative error < 1e-13 of the local amplitude sqrt(2/(pi x))
/// over [0, 1e6]; exact odd symmetry.
double bessel_j1(double x);

}  // namespace trap
