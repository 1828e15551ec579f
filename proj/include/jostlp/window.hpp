#pragma once

#include <cmath>
#include <vector>

#include "jostlp/grid.hpp"
#include "jostlp/math.hpp"

namespace jostlp {

namespace detail {
//! exp(-1/t) for t > 0, else 0; the standard C-infinity mollifier seed.
inline double mollifier_seed(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

//! Smooth monotone step: 0 for t <= 0, 1 for t >= 1.
inline double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = mollifier_seed(t);
  const double b = mollifier_seed(1.0 - t);
  return a / (a + b);
}
} // namespace detail

//! Smooth even cutoff psi: 1 on [-1,1], 0 outside [-2,2].
inline double lp_cutoff(double s) { return detail::smooth_step(2.0 - std::abs(s)); }

//! Dyadic window phi(s) = psi(s) - psi(2s): even, nonnegative, smooth,
//! supported on 1/2 <= |s| <= 2. The dilates phi(s/2^j) telescope to a
//! partition of unity on the line minus the origin.
struct LpWindow {
  int j = 0; // dyadic index; scale() = 2^j

  double scale() const { return std::ldexp(1.0, j); }

  double operator()(double s) const { return lp_cutoff(s) - lp_cutoff(2.0 * s); }

  //! phi(tau / M) for an arbitrary positive scale M.
  double at_scale(double tau, double M) const { return (*this)(tau / M); }

  std::vector<double> sample(const FrequencyGrid &fq) const {
    std::vector<double> out(fq.size());
    for (std::size_t q = 0; q < fq.size(); ++q) out[q] = (*this)(fq[q]);
    return out;
  }
};

inline LpWindow build_lp_window(int j) { return LpWindow{j}; }

//! Sum of phi(s/2^j) over j in [j_lo, j_hi]; equals 1 for s != 0 once the
//! range covers the dyadic shell of s (telescoping).
inline double lp_partition_sum(double s, int j_lo, int j_hi) {
  LpWindow w;
  double sum = 0;
  for (int j = j_lo; j <= j_hi; ++j) sum += w(s / std::ldexp(1.0, j));
  return sum;
}

} // namespace jostlp
