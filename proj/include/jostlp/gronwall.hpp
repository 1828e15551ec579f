#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "jostlp/errors.hpp"
#include "jostlp/grid.hpp"

namespace jostlp {

//! B(x_i) = integral of b from x_i to the right end, by backward
//! cumulative trapezoid sums.
inline std::vector<double> integral_from_right(const std::vector<double> &b,
                                               const SpatialGrid &g) {
  if (int(b.size()) != g.n())
    throw validation_error("integral_from_right: size mismatch with grid");
  std::vector<double> B(b.size(), 0.0);
  const double h = g.h();
  for (int i = g.n() - 2; i >= 0; --i)
    B[std::size_t(i)] = B[std::size_t(i + 1)] +
                        0.5 * h * (b[std::size_t(i)] + b[std::size_t(i + 1)]);
  return B;
}

//! Certified envelope for v(x) <= a(x) + \int_x^inf b v dt on the grid:
//! the right side of the Gronwall bound a + \int a b exp(\int b) with the
//! exponential transport evaluated by the trapezoid-consistent rational
//! growth factor per panel. With that choice the bound is the exact
//! extremal solution of the trapezoid-discretized inequality, so it
//! dominates every Picard iterate of v <- a + \int b v from v = a.
//!
//! Writing v = a + w, the transport part w >= 0 obeys the cancellation-free
//! backward recurrence
//!   w_i (1 - z_i) = z_i a_i + z_{i+1} a_{i+1} + w_{i+1} (1 + z_{i+1}),
//! z = h b / 2. The returned envelope carries a 16 n eps rounding margin on
//! w so it stays an upper bound for solutions of the same discrete system
//! computed by other floating-point routes.
inline std::vector<double> gronwall_bound(const std::vector<double> &a,
                                          const std::vector<double> &b,
                                          const SpatialGrid &g) {
  if (int(a.size()) != g.n() || int(b.size()) != g.n())
    throw validation_error("gronwall_bound: array sizes must match the grid");
  const double h = g.h();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] >= 0.0) || !(b[i] >= 0.0))
      throw validation_error("gronwall_bound: a and b must be nonnegative");
    if (!(h * b[i] < 2.0))
      throw numeric_error("gronwall_bound: h*b >= 2 breaks the discrete "
                          "contraction; refine the grid");
  }
  const std::size_t n = a.size();
  std::vector<double> w(n, 0.0);
  for (int i = g.n() - 2; i >= 0; --i) {
    const std::size_t k = std::size_t(i);
    const double z0 = 0.5 * h * b[k], z1 = 0.5 * h * b[k + 1];
    w[k] = (z0 * a[k] + z1 * a[k + 1] + w[k + 1] * (1.0 + z1)) / (1.0 - z0);
  }
  const double rounding = 16.0 * double(n) * std::numeric_limits<double>::epsilon();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a[i] + w[i] * (1.0 + rounding);
  return v;
}

} // namespace jostlp
