#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "jostlp/errors.hpp"

namespace jostlp {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx iu{0.0, 1.0};

//! Japanese bracket ⟨x⟩ = sqrt(1 + x²).
inline double bracket(double x) { return std::sqrt(1.0 + x * x); }

inline double pos_part(double x) { return x > 0.0 ? x : 0.0; }
inline double neg_part(double x) { return x < 0.0 ? -x : 0.0; }

inline double sq(double x) { return x * x; }

//! Ordinary least squares line y = slope*x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rss = 0.0; // residual sum of squares
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw validation_error("fit_line: need at least two matching samples");
  const double n = double(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0))
    throw numeric_error("fit_line: degenerate abscissa (all x equal)");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i)
    f.rss += sq(y[i] - (f.slope * x[i] + f.intercept));
  return f;
}

inline double max_abs(std::span<const double> v) {
  double m = 0;
  for (double a : v) m = std::max(m, std::abs(a));
  return m;
}

inline double max_abs(std::span<const cplx> v) {
  double m = 0;
  for (const cplx &a : v) m = std::max(m, std::abs(a));
  return m;
}

inline bool all_finite(std::span<const double> v) {
  for (double a : v)
    if (!std::isfinite(a)) return false;
  return true;
}

} // namespace jostlp
