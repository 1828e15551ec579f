#pragma once

#include <cmath>
#include <vector>

#include "jostlp/errors.hpp"
#include "jostlp/math.hpp"

namespace jostlp {

//! Dyadic shell profile: |x|^{-n/2} on the union of shells
//! 2^j <= |x| <= 2^{j+1}, j = 0..N; zero elsewhere. Only n = 1 is built;
//! n is recorded in outputs for forward compatibility.
struct ShellFunction {
  int N = 0;
  int n = 1;
  std::vector<double> log_radii; // radial sample grid (log-spaced), for cross-checks

  double operator()(double x) const {
    const double r = std::abs(x);
    if (r < 1.0 || r > std::ldexp(1.0, N + 1)) return 0.0;
    return 1.0 / std::sqrt(r); // |x|^{-n/2} with n = 1
  }
};

inline ShellFunction dyadic_shell_function(int N, int n = 1) {
  if (N < 0) throw validation_error("dyadic_shell_function: N >= 0 required");
  if (n != 1) throw validation_error("dyadic_shell_function: only n = 1 is built");
  ShellFunction sf;
  sf.N = N;
  sf.n = n;
  const int per_shell = 16;
  const double u_max = double(N + 1) * std::log(2.0);
  const int total = per_shell * (N + 1);
  sf.log_radii.reserve(std::size_t(total) + 1);
  for (int i = 0; i <= total; ++i)
    sf.log_radii.push_back(std::exp(u_max * double(i) / double(total)));
  return sf;
}

//! ||phi_N||_{L2}^2 by exact shell antiderivatives:
//! each shell contributes \int_{2^j}^{2^{j+1}} r^{-1} dr = ln 2 per side.
inline double shell_l2_norm_sq(const ShellFunction &sf) {
  return 2.0 * double(sf.N + 1) * std::log(2.0);
}

//! Riesz potential of order n/2 evaluated at the origin, with the kernel
//! constant set to 1: \int |y|^{-1/2} phi_N(y) dy = 2 (N+1) ln 2 for n = 1,
//! again by exact shell antiderivatives.
inline double riesz_at_zero(const ShellFunction &sf) {
  return 2.0 * double(sf.N + 1) * std::log(2.0);
}

//! Trapezoid cross-check of the squared L2 norm on the log-radial grid.
inline double shell_l2_norm_sq_quadrature(const ShellFunction &sf) {
  const auto &r = sf.log_radii;
  double sum = 0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double fa = sq(sf(r[i])), fb = sq(sf(r[i + 1]));
    sum += 0.5 * (r[i + 1] - r[i]) * (fa + fb);
  }
  return 2.0 * sum; // both signs of x
}

struct ShellScalingRow {
  int N;
  double riesz0;    // I(0)
  double norm_sq;   // ||phi_N||^2
  double ratio;     // I(0)^2 / ||phi_N||^2
};

struct ShellScalingReport {
  std::vector<ShellScalingRow> rows;
  LineFit riesz_sq_fit; // log I(0)^2 against log(shell count)
  LineFit norm_sq_fit;  // log ||phi_N||^2 against log(shell count)
};

//! Growth-rate study: least-squares slopes of log I(0)^2 and log ||phi_N||^2
//! against the log shell count N+1 (the quantity both closed forms are
//! exactly a power of). The divergence witnessed is the ratio
//! I(0)^2 / ||phi_N||^2 growing linearly with the shell count.
inline ShellScalingReport shell_scaling_report(const std::vector<int> &Ns) {
  if (Ns.size() < 3)
    throw validation_error("shell_scaling_report: need at least 3 values of N");
  ShellScalingReport rep;
  std::vector<double> lx, ly1, ly2;
  for (int N : Ns) {
    const auto sf = dyadic_shell_function(N);
    ShellScalingRow row;
    row.N = N;
    row.riesz0 = riesz_at_zero(sf);
    row.norm_sq = shell_l2_norm_sq(sf);
    row.ratio = sq(row.riesz0) / row.norm_sq;
    rep.rows.push_back(row);
    lx.push_back(std::log(double(N + 1)));
    ly1.push_back(std::log(sq(row.riesz0)));
    ly2.push_back(std::log(row.norm_sq));
  }
  rep.riesz_sq_fit = fit_line(lx, ly1);
  rep.norm_sq_fit = fit_line(lx, ly2);
  return rep;
}

} // namespace jostlp
