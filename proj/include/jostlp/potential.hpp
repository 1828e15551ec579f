#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jostlp/errors.hpp"
#include "jostlp/grid.hpp"
#include "jostlp/math.hpp"

namespace jostlp {

enum class PotentialKind { zero, square_barrier, gaussian, sech2_barrier, sampled };

//! Real short-range potential with its declared decay exponent gamma.
//! Built-in kinds are nonnegative, which rules out bound states.
class Potential {
public:
  // the zero potential satisfies every decay hypothesis; carry a high
  // exponent so experiment gates reach the meaningful checks
  static Potential zero() { return Potential(PotentialKind::zero, 0, 0, 10.0); }

  static Potential square_barrier(double v0, double half_width, double gamma = 2.0) {
    if (!(v0 >= 0) || !(half_width > 0))
      throw validation_error("square_barrier: v0 >= 0 and half_width > 0 required");
    return Potential(PotentialKind::square_barrier, v0, half_width, gamma);
  }

  static Potential gaussian(double v0, double width, double gamma = 2.0) {
    if (!(v0 >= 0) || !(width > 0))
      throw validation_error("gaussian: v0 >= 0 and width > 0 required");
    return Potential(PotentialKind::gaussian, v0, width, gamma);
  }

  static Potential sech2_barrier(double v0, double gamma = 2.0) {
    if (!(v0 >= 0))
      throw validation_error("sech2_barrier: v0 >= 0 required");
    return Potential(PotentialKind::sech2_barrier, v0, 1.0, gamma);
  }

  //! Samples are linearly interpolated; zero outside the sampled range.
  static Potential sampled(std::vector<double> xs, std::vector<double> vs,
                           double gamma) {
    if (xs.size() != vs.size() || xs.size() < 2)
      throw validation_error("sampled potential: need matching x/V arrays, size >= 2");
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      if (!(xs[i] < xs[i + 1]))
        throw validation_error("sampled potential: x must be strictly increasing");
    if (!all_finite(xs) || !all_finite(vs))
      throw validation_error("sampled potential: non-finite samples");
    Potential p(PotentialKind::sampled, 0, 0, gamma);
    p.xs_ = std::move(xs);
    p.vs_ = std::move(vs);
    return p;
  }

  PotentialKind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  double amplitude() const { return v0_; }
  double shape_param() const { return w_; }

  bool is_zero() const {
    if (kind_ == PotentialKind::zero) return true;
    if (kind_ == PotentialKind::sampled) {
      for (double v : vs_)
        if (v != 0.0) return false;
      return true;
    }
    return v0_ == 0.0;
  }

  //! V(x). At the jump nodes of the square barrier the mean value v0/2 is
  //! returned, which keeps trapezoid quadrature second order across the jump.
  double operator()(double x) const {
    if (!std::isfinite(x)) throw validation_error("eval potential: x must be finite");
    switch (kind_) {
    case PotentialKind::zero:
      return 0.0;
    case PotentialKind::square_barrier: {
      const double r = std::abs(x);
      const double edge_tol = 1e-12 * std::max(1.0, w_);
      if (std::abs(r - w_) <= edge_tol) return 0.5 * v0_;
      return r < w_ ? v0_ : 0.0;
    }
    case PotentialKind::gaussian:
      return v0_ * std::exp(-(x / w_) * (x / w_));
    case PotentialKind::sech2_barrier: {
      const double c = std::cosh(x);
      return v0_ / (c * c);
    }
    case PotentialKind::sampled: {
      if (x <= xs_.front() || x >= xs_.back()) {
        // exactly at an end node we honor the sample; beyond, zero extension
        if (x == xs_.front()) return vs_.front();
        if (x == xs_.back()) return vs_.back();
        return 0.0;
      }
      auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const std::size_t k = std::size_t(it - xs_.begin());
      const double t = (x - xs_[k - 1]) / (xs_[k] - xs_[k - 1]);
      return (1.0 - t) * vs_[k - 1] + t * vs_[k];
    }
    }
    return 0.0;
  }

  //! Interval outside which V vanishes identically, when one exists.
  std::optional<std::pair<double, double>> exact_support() const {
    switch (kind_) {
    case PotentialKind::zero:
      return std::pair<double, double>{0.0, 0.0};
    case PotentialKind::square_barrier:
      return std::pair<double, double>{-w_, w_};
    case PotentialKind::sampled:
      return std::pair<double, double>{xs_.front(), xs_.back()};
    default:
      return std::nullopt;
    }
  }

  std::string describe() const {
    switch (kind_) {
    case PotentialKind::zero: return "zero";
    case PotentialKind::square_barrier:
      return "square_barrier(v0=" + std::to_string(v0_) + ", a=" + std::to_string(w_) + ")";
    case PotentialKind::gaussian:
      return "gaussian(v0=" + std::to_string(v0_) + ", w=" + std::to_string(w_) + ")";
    case PotentialKind::sech2_barrier:
      return "sech2_barrier(v0=" + std::to_string(v0_) + ")";
    case PotentialKind::sampled:
      return "sampled(" + std::to_string(xs_.size()) + " points)";
    }
    return "?";
  }

private:
  Potential(PotentialKind k, double v0, double w, double gamma)
      : kind_(k), v0_(v0), w_(w), gamma_(gamma) {
    if (!(gamma >= 1.0))
      throw validation_error("potential: decay exponent gamma >= 1 required");
  }

  PotentialKind kind_;
  double v0_, w_, gamma_;
  std::vector<double> xs_, vs_;
};

//! Trapezoid quadrature of <x>^gamma |V(x)| over the grid. Monotone
//! nondecreasing in gamma.
inline double weighted_l1_norm(const Potential &p, double gamma,
                               const SpatialGrid &g) {
  if (!(gamma >= 0.0))
    throw validation_error("weighted_l1_norm: gamma >= 0 required");
  const auto w = g.trapezoid_weights();
  double sum = 0;
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.node(i);
    const double v = p(x);
    if (!std::isfinite(v))
      throw numeric_error("weighted_l1_norm: potential sample not finite at x=" +
                          std::to_string(x));
    sum += w[std::size_t(i)] * std::pow(bracket(x), gamma) * std::abs(v);
  }
  return sum;
}

} // namespace jostlp
