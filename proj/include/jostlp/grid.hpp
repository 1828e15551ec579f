#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "jostlp/errors.hpp"
#include "jostlp/math.hpp"

namespace jostlp {

//! Uniform spatial grid on [x_min, x_max] with x_min < 0 < x_max.
//! Immutable after construction; all operations on it are pure.
class SpatialGrid {
public:
  SpatialGrid(double x_min, double x_max, int n_points)
      : x_min_(x_min), x_max_(x_max), n_(n_points) {
    if (!(std::isfinite(x_min) && std::isfinite(x_max)))
      throw validation_error("SpatialGrid: bounds must be finite");
    if (!(x_min < 0.0 && 0.0 < x_max))
      throw validation_error("SpatialGrid: requires x_min < 0 < x_max");
    if (n_points < 3)
      throw validation_error("SpatialGrid: requires n_points >= 3");
    h_ = (x_max - x_min) / double(n_points - 1);
    if (!(h_ > 0.0) || !std::isfinite(h_))
      throw validation_error("SpatialGrid: spacing must be positive and finite");
  }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  int n() const { return n_; }
  double h() const { return h_; }
  double node(int i) const { return x_min_ + h_ * double(i); }

  std::vector<double> nodes() const {
    std::vector<double> xs(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) xs[std::size_t(i)] = node(i);
    return xs;
  }

  //! Trapezoid quadrature weights (h inside, h/2 at the two ends).
  std::vector<double> trapezoid_weights() const {
    std::vector<double> w(std::size_t(n_), h_);
    w.front() = 0.5 * h_;
    w.back() = 0.5 * h_;
    return w;
  }

  //! Same bounds, halved spacing (n -> 2n - 1). Keeps every existing node.
  SpatialGrid refined() const { return SpatialGrid(x_min_, x_max_, 2 * n_ - 1); }

  //! Coarser grid formed by keeping every stride-th node.
  SpatialGrid decimated(int stride) const {
    if (stride < 1 || (n_ - 1) % stride != 0)
      throw validation_error("SpatialGrid::decimated: stride must divide n-1");
    return SpatialGrid(x_min_, x_max_, (n_ - 1) / stride + 1);
  }

  //! Index of x on this grid, or -1 if x is not a node (up to rounding).
  int index_of(double x) const {
    const double t = (x - x_min_) / h_;
    const int i = int(std::lround(t));
    if (i < 0 || i >= n_) return -1;
    return std::abs(node(i) - x) <= 1e-9 * std::max(1.0, std::abs(x)) ? i : -1;
  }

  std::string describe() const {
    return "[" + std::to_string(x_min_) + ", " + std::to_string(x_max_) +
           "] n=" + std::to_string(n_);
  }

private:
  double x_min_, x_max_;
  int n_;
  double h_;
};

//! Sorted frequency samples, symmetric about 0 (tau in grid <=> -tau in
//! grid); 0 itself is present only when includes_zero is set, in which
//! case values at 0 mean the tau -> 0 limit.
class FrequencyGrid {
public:
  FrequencyGrid(std::vector<double> taus, bool includes_zero)
      : tau_(std::move(taus)), includes_zero_(includes_zero) {
    if (tau_.size() < 2)
      throw validation_error("FrequencyGrid: need at least two samples");
    for (std::size_t i = 0; i + 1 < tau_.size(); ++i)
      if (!(tau_[i] < tau_[i + 1]))
        throw validation_error("FrequencyGrid: samples must be strictly increasing");
    // symmetry about 0
    const std::size_t n = tau_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double want = -tau_[n - 1 - i];
      if (std::abs(tau_[i] - want) > 1e-12 * std::max(1.0, std::abs(want)))
        throw validation_error("FrequencyGrid: samples must be symmetric about 0");
    }
  }

  //! Uniform grid on [-tau_max, tau_max]; n_half samples per sign.
  //! include_zero inserts the origin with the limit-value convention.
  static FrequencyGrid uniform_symmetric(double tau_max, int n_half,
                                         bool include_zero) {
    if (!(tau_max > 0) || n_half < 2)
      throw validation_error("FrequencyGrid: tau_max > 0 and n_half >= 2 required");
    std::vector<double> t;
    t.reserve(std::size_t(2 * n_half + 1));
    const double step = tau_max / double(n_half);
    for (int i = n_half; i >= 1; --i) t.push_back(-step * double(i));
    if (include_zero) t.push_back(0.0);
    for (int i = 1; i <= n_half; ++i) t.push_back(step * double(i));
    return FrequencyGrid(std::move(t), include_zero);
  }

  //! Two mirrored uniform bands covering supp phi(./M) = {M/2 <= |tau| <= 2M},
  //! padded by one spacing on each side. Spacing is at most h_tau_max and
  //! at least min_per_band nodes cover each band.
  static FrequencyGrid dyadic_band(double M, double h_tau_max, int min_per_band = 129) {
    if (!(M > 0)) throw validation_error("FrequencyGrid: scale M must be positive");
    const double lo = 0.5 * M, hi = 2.0 * M;
    int n = std::max(min_per_band, int(std::ceil((hi - lo) / h_tau_max)) + 1);
    const double step = (hi - lo) / double(n - 1);
    const double pad = step;
    // extend by one padding node on each side (phi vanishes there)
    std::vector<double> band;
    band.reserve(std::size_t(n + 2));
    band.push_back(lo - pad);
    for (int i = 0; i < n; ++i) band.push_back(lo + step * double(i));
    band.push_back(hi + pad);
    std::vector<double> t;
    t.reserve(2 * band.size());
    for (auto it = band.rbegin(); it != band.rend(); ++it) t.push_back(-*it);
    for (double v : band) t.push_back(v);
    return FrequencyGrid(std::move(t), false);
  }

  const std::vector<double> &taus() const { return tau_; }
  bool includes_zero() const { return includes_zero_; }
  std::size_t size() const { return tau_.size(); }
  double operator[](std::size_t i) const { return tau_[i]; }

  //! Largest gap between adjacent samples.
  double max_spacing() const {
    double m = 0;
    for (std::size_t i = 0; i + 1 < tau_.size(); ++i)
      m = std::max(m, tau_[i + 1] - tau_[i]);
    return m;
  }

  //! Smallest gap between adjacent samples.
  double min_spacing() const {
    double m = tau_[1] - tau_[0];
    for (std::size_t i = 0; i + 1 < tau_.size(); ++i)
      m = std::min(m, tau_[i + 1] - tau_[i]);
    return m;
  }

  //! Largest gap between adjacent samples inside [lo, hi].
  double max_spacing_within(double lo, double hi) const {
    double m = 0;
    bool any = false;
    for (std::size_t i = 0; i + 1 < tau_.size(); ++i) {
      if (tau_[i] >= lo && tau_[i + 1] <= hi) {
        m = std::max(m, tau_[i + 1] - tau_[i]);
        any = true;
      }
    }
    if (!any) return std::numeric_limits<double>::infinity();
    return m;
  }

  bool covers(double lo, double hi) const {
    return tau_.front() <= lo && tau_.back() >= hi;
  }

  //! Trapezoid weights respecting gaps: a panel contributes only where
  //! adjacent samples are close (within gap_factor of the local minimum
  //! spacing), so two-band grids integrate each band separately.
  std::vector<double> trapezoid_weights() const {
    const std::size_t n = tau_.size();
    std::vector<double> w(n, 0.0);
    const double typical = min_spacing();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double d = tau_[i + 1] - tau_[i];
      if (d <= 32.0 * typical) { // treat as one contiguous panel
        w[i] += 0.5 * d;
        w[i + 1] += 0.5 * d;
      }
    }
    return w;
  }

  int index_of(double tau, double tol = 1e-10) const {
    for (std::size_t i = 0; i < tau_.size(); ++i)
      if (std::abs(tau_[i] - tau) <= tol * std::max(1.0, std::abs(tau))) return int(i);
    return -1;
  }

private:
  std::vector<double> tau_;
  bool includes_zero_;
};

//! Phase-increment rule for trapezoid quadrature of oscillatory kernels:
//! the absolute tau spacing must keep each step's phase advance over the
//! largest |x ± y| below budget (pi/4 by default).
inline double required_tau_spacing(const SpatialGrid &g, double budget = pi / 4.0) {
  const double zmax = std::max(g.x_max() - g.x_min(),
                               std::max(std::abs(2.0 * g.x_min()), 2.0 * g.x_max()));
  return budget / zmax;
}

} // namespace jostlp
