#pragma once

#include <cmath>
#include <span>

#include "jostlp/errors.hpp"
#include "jostlp/math.hpp"

namespace jostlp {

//! Empirical Hoelder seminorm of g sampled on a tau grid:
//!   max over pairs with h_tau <= |tau_a - tau_b| <= 1 of
//!   |g(tau_a) - g(tau_b)| / |tau_a - tau_b|^sigma.
//! Pair separations are capped at 1; the seminorms this feeds are applied
//! to compactly supported integrands where larger separations only dilute
//! the supremum.
inline double holder_seminorm(std::span<const cplx> samples,
                              std::span<const double> tau, double sigma) {
  if (samples.size() != tau.size())
    throw validation_error("holder_seminorm: samples/tau size mismatch");
  if (samples.size() < 2)
    throw validation_error("holder_seminorm: need at least two samples");
  if (!(sigma > 0.0 && sigma < 1.0))
    throw validation_error("holder_seminorm: sigma must lie in (0,1)");
  double h_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < tau.size(); ++i)
    h_min = std::min(h_min, tau[i + 1] - tau[i]);
  double best = 0.0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    for (std::size_t j = i + 1; j < tau.size(); ++j) {
      const double d = tau[j] - tau[i];
      if (d > 1.0) break;
      if (d < h_min) continue;
      best = std::max(best, std::abs(samples[j] - samples[i]) / std::pow(d, sigma));
    }
  }
  return best;
}

//! Full C^{0,sigma} norm: sup norm plus seminorm.
inline double holder_norm(std::span<const cplx> samples,
                          std::span<const double> tau, double sigma) {
  return max_abs(samples) + holder_seminorm(samples, tau, sigma);
}

} // namespace jostlp
