// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace trap {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes/weights for the given order, computed once and cached.
/// Thread-safe.
const GaussRule& gauss_legendre(int order);

/// Integral of f over [a, a + n_panels*width] with a fixed-order composite
/// rule, one Gauss panel per subinterval.
double integrate_panels_fixed(const std::function<double(double)>& f, double a,
                              double width, long n_panels, int order);

}  // namespace trap
