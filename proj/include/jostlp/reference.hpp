#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "jostlp/errors.hpp"
#include "jostlp/grid.hpp"
#include "jostlp/math.hpp"

namespace jostlp {

//! Independent reference paths used by the verification suite. Nothing
//! here goes through the Volterra solver or the quadrature kernels: the
//! scattering reference propagates the ODE exactly across constant-
//! potential segments, and the Picard reference iterates the integral
//! inequality directly.
namespace reference {

namespace detail {
inline cplx sinc_kappa(cplx kappa, double L) {
  const cplx z = kappa * L;
  if (std::abs(z) < 1e-6) return L * (1.0 - z * z / 6.0);
  return std::sin(z) / kappa;
}
} // namespace detail

//! Propagates (u, u') of u'' = (V0 - tau^2) u across a constant segment of
//! length L (signed).
inline void propagate_constant(cplx &u, cplx &du, double V0, double tau, double L) {
  const cplx kappa = std::sqrt(cplx(tau * tau - V0, 0.0));
  const cplx c = std::cos(kappa * L);
  const cplx s_over_k = detail::sinc_kappa(kappa, L);
  const cplx u2 = u * c + du * s_over_k;
  const cplx du2 = -u * kappa * kappa * s_over_k + du * c;
  u = u2;
  du = du2;
}

struct ScatteringTriple {
  cplx T, R_plus, R_minus;
};

//! Closed-form scattering data for the square barrier of height v0 on
//! [-a, a]: plane-wave matching across the two jump points. The wave
//! normalized to e^{i tau x} on the right is carried to the left edge;
//! its plane-wave coefficients there give 1/T and R_-/T, and the mirrored
//! propagation gives R_+.
inline ScatteringTriple barrier_scattering(double v0, double a, double tau) {
  if (tau == 0.0) throw validation_error("barrier_scattering: tau must be nonzero");
  ScatteringTriple out;
  const cplx eia = cplx(std::cos(tau * a), std::sin(tau * a));
  {
    // rightgoing solution: u = e^{i tau x} for x >= a, carried to x = -a
    cplx u = eia, du = iu * tau * eia;
    propagate_constant(u, du, v0, tau, -2.0 * a);
    const cplx c1 = eia * (u - iu * du / tau) / 2.0;
    const cplx c2 = std::conj(eia) * (u + iu * du / tau) / 2.0;
    out.T = 1.0 / c1;
    out.R_minus = c2 / c1;
  }
  {
    // leftgoing solution: u = e^{-i tau x} for x <= -a, carried to x = +a
    cplx u = eia, du = -iu * tau * eia;
    propagate_constant(u, du, v0, tau, 2.0 * a);
    const cplx d1 = eia * (u + iu * du / tau) / 2.0;
    const cplx d2 = std::conj(eia) * (u - iu * du / tau) / 2.0;
    out.R_plus = d2 / d1;
    // 1/d1 reproduces T; callers may cross-check the two routes.
  }
  return out;
}

//! Closed-form modified Jost value m_+(x, tau) for the square barrier:
//! the exact rightgoing solution times e^{-i tau x}.
inline cplx barrier_m_plus(double v0, double a, double x, double tau) {
  if (x >= a) return cplx(1.0, 0.0);
  const cplx eia = cplx(std::cos(tau * a), std::sin(tau * a));
  cplx u = eia, du = iu * tau * eia;
  if (x >= -a) {
    propagate_constant(u, du, v0, tau, x - a);
  } else {
    propagate_constant(u, du, v0, tau, -2.0 * a);
    propagate_constant(u, du, 0.0, tau, x + a);
  }
  const cplx e = cplx(std::cos(tau * x), -std::sin(tau * x));
  return e * u;
}

//! Brute-force Picard iteration of v <- a + \int_x^inf b v dt with the
//! backward trapezoid rule, from v = a, stopped one step short of the
//! requested tolerance so the returned iterate sits below the fixed point.
inline std::vector<double> picard_fixed_point(const std::vector<double> &a,
                                              const std::vector<double> &b,
                                              const SpatialGrid &g,
                                              int max_iter = 100000,
                                              double tol = 1e-10) {
  if (int(a.size()) != g.n() || int(b.size()) != g.n())
    throw validation_error("picard_fixed_point: sizes must match the grid");
  const double h = g.h();
  std::vector<double> v = a, next(a.size());
  for (int it = 0; it < max_iter; ++it) {
    // suffix trapezoid integral of b v
    double run = 0;
    next.back() = a.back();
    for (int i = g.n() - 2; i >= 0; --i) {
      const std::size_t k = std::size_t(i);
      run += 0.5 * h * (b[k] * v[k] + b[k + 1] * v[k + 1]);
      next[k] = a[k] + run;
    }
    double change = 0, scale = 1;
    for (std::size_t k = 0; k < v.size(); ++k) {
      change = std::max(change, std::abs(next[k] - v[k]));
      scale = std::max(scale, std::abs(next[k]));
    }
    if (change <= tol * scale) return v; // previous iterate: strictly below the limit
    v = next;
  }
  throw numeric_error("picard_fixed_point: no convergence (feedback too strong "
                      "for this grid)");
}

} // namespace reference
} // namespace jostlp
