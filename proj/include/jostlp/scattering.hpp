#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "jostlp/errors.hpp"
#include "jostlp/grid.hpp"
#include "jostlp/math.hpp"
#include "jostlp/parallel.hpp"
#include "jostlp/potential.hpp"
#include "jostlp/volterra.hpp"

namespace jostlp {

namespace detail {

inline cplx weighted_potential_integral(const Potential &p, const SpatialGrid &g,
                                        const std::vector<cplx> &m,
                                        double phase_tau) {
  // trapezoid of e^{i phase_tau t} V(t) m(t); phase_tau = 0 gives \int V m
  const auto w = g.trapezoid_weights();
  cplx sum = 0;
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.node(i);
    const double v = p(x);
    if (v == 0.0) continue;
    cplx ph(1.0, 0.0);
    if (phase_tau != 0.0) ph = cplx(std::cos(phase_tau * x), std::sin(phase_tau * x));
    sum += w[std::size_t(i)] * ph * v * m[std::size_t(i)];
  }
  return sum;
}

} // namespace detail

//! Transmission coefficient from the reciprocal relation
//!   tau / T(tau) = tau - (1/2i) \int V(t) m_+(t, tau) dt.
inline cplx transmission(const Potential &p, const SpatialGrid &g, double tau,
                         const std::vector<cplx> &m_plus) {
  if (tau == 0.0)
    throw validation_error("transmission: tau must be nonzero (use the sweep's "
                           "limit handling for the origin)");
  const cplx I = detail::weighted_potential_integral(p, g, m_plus, 0.0);
  const cplx den = tau + 0.5 * iu * I;
  if (std::abs(den) < 1e-12)
    throw numeric_error("transmission: denominator below 1e-12 at tau=" +
                        std::to_string(tau) +
                        " (numerical bound-state/edge artifact)");
  return tau / den;
}

inline cplx transmission(const Potential &p, const SpatialGrid &g, double tau,
                         const JostOptions &opts = {}) {
  return transmission(p, g, tau, solve_jost(p, g, tau, Side::plus, opts));
}

//! Reflection coefficient
//!   R_pm(tau) = (T(tau) / 2 i tau) \int e^{∓2 i t tau} V(t) m_∓(t, tau) dt.
inline cplx reflection(const Potential &p, const SpatialGrid &g, double tau,
                       Side side, cplx T, const std::vector<cplx> &m_opposite) {
  if (tau == 0.0)
    throw validation_error("reflection: tau must be nonzero");
  const double phase = (side == Side::plus) ? -2.0 * tau : 2.0 * tau;
  const cplx I = detail::weighted_potential_integral(p, g, m_opposite, phase);
  return T / (2.0 * iu * tau) * I;
}

inline cplx reflection(const Potential &p, const SpatialGrid &g, double tau,
                       Side side, const JostOptions &opts = {}) {
  const auto m_plus = solve_jost(p, g, tau, Side::plus, opts);
  const cplx T = transmission(p, g, tau, m_plus);
  if (side == Side::plus) {
    const auto m_minus = solve_jost(p, g, tau, Side::minus, opts);
    return reflection(p, g, tau, Side::plus, T, m_minus);
  }
  return reflection(p, g, tau, Side::minus, T, m_plus);
}

enum class Resonance { resonant, non_resonant };

inline std::string to_string(Resonance r) {
  return r == Resonance::resonant ? "resonant" : "non_resonant";
}

struct ResonanceResult {
  Resonance verdict = Resonance::resonant;
  cplx alpha = 0;            // fitted slope of T(tau) near 0 (meaningful when non_resonant)
  cplx extrapolated_T0 = 0;  // linear extrapolation of T to tau = 0
  double slope_instability = 0; // |alpha_last - alpha_first| / |alpha_fit|
};

//! Classifies the origin: resonant iff the extrapolated T(0) is nonzero.
//! T is evaluated along the decreasing positive sequence tau_seq,
//! extrapolated linearly to 0; non_resonant requires the extrapolated
//! |T(0)| at or below threshold and a stable fitted slope.
inline ResonanceResult detect_resonance(const Potential &p, const SpatialGrid &g,
                                        const std::vector<double> &tau_seq,
                                        double threshold = 0.02,
                                        const JostOptions &opts = {}) {
  if (tau_seq.size() < 3)
    throw validation_error("detect_resonance: need at least 3 tau values");
  for (std::size_t i = 0; i < tau_seq.size(); ++i) {
    if (!(tau_seq[i] > 0))
      throw validation_error("detect_resonance: tau values must be positive");
    if (i > 0 && !(tau_seq[i] < tau_seq[i - 1]))
      throw validation_error("detect_resonance: tau values must decrease");
  }
  std::vector<cplx> T(tau_seq.size());
  for (std::size_t i = 0; i < tau_seq.size(); ++i)
    T[i] = transmission(p, g, tau_seq[i], opts);

  for (std::size_t i = 0; i + 1 < T.size(); ++i) {
    if (std::abs(T[i + 1]) > std::abs(T[i]) * (1.0 + 0.05) + 1e-12)
      throw numeric_error("detect_resonance: |T| is not monotone along the "
                          "tau sequence; the linear fit is inconclusive");
  }

  // complex least-squares line T ~ T0 + alpha tau
  double mt = 0;
  cplx mT = 0;
  for (std::size_t i = 0; i < tau_seq.size(); ++i) {
    mt += tau_seq[i];
    mT += T[i];
  }
  mt /= double(tau_seq.size());
  mT /= double(tau_seq.size());
  double sxx = 0;
  cplx sxy = 0;
  for (std::size_t i = 0; i < tau_seq.size(); ++i) {
    sxx += sq(tau_seq[i] - mt);
    sxy += (tau_seq[i] - mt) * (T[i] - mT);
  }
  ResonanceResult r;
  r.alpha = sxy / sxx;
  r.extrapolated_T0 = mT - r.alpha * mt;

  const std::size_t n = tau_seq.size();
  const cplx a_first = (T[1] - T[0]) / (tau_seq[1] - tau_seq[0]);
  const cplx a_last = (T[n - 1] - T[n - 2]) / (tau_seq[n - 1] - tau_seq[n - 2]);
  r.slope_instability =
      std::abs(r.alpha) > 0 ? std::abs(a_last - a_first) / std::abs(r.alpha) : 0.0;

  const bool vanishes = std::abs(r.extrapolated_T0) <= threshold;
  const bool stable = r.slope_instability <= 0.10;
  r.verdict = (vanishes && stable) ? Resonance::non_resonant : Resonance::resonant;
  return r;
}

//! Scattering coefficients over a frequency grid, plus the resonance
//! classification. At the tau = 0 node (when present) the limit values are
//! stored: T(0) by the reciprocal relation's limit, R(0) via the constant
//! Wronskian of the zero-energy solutions.
struct ScatteringData {
  FrequencyGrid grid;
  std::vector<cplx> T, R_plus, R_minus;
  Resonance verdict = Resonance::resonant;
  cplx alpha = 0;
  double unitarity_max_defect = 0;

  cplx T_at(std::size_t q) const { return T[q]; }
};

struct SweepOptions {
  JostOptions jost;
  bool classify_resonance = true;
  std::vector<double> resonance_taus = {0.2, 0.1, 0.05, 0.025};
};

inline ScatteringData scattering_sweep(const Potential &p, const SpatialGrid &g,
                                       const FrequencyGrid &fq,
                                       const SweepOptions &opts = {}) {
  ScatteringData sd{fq, {}, {}, {}, Resonance::resonant, 0, 0};
  const std::size_t nq = fq.size();
  sd.T.assign(nq, 0);
  sd.R_plus.assign(nq, 0);
  sd.R_minus.assign(nq, 0);
  std::vector<double> defect(nq, 0.0);

  parallel_for(nq, [&](std::size_t q) {
    const double tau = fq[q];
    if (tau == 0.0) {
      const auto mp = solve_jost(p, g, 0.0, Side::plus, opts.jost);
      const auto mm = solve_jost(p, g, 0.0, Side::minus, opts.jost);
      const cplx Ip = detail::weighted_potential_integral(p, g, mp, 0.0);
      const cplx Im = detail::weighted_potential_integral(p, g, mm, 0.0);
      if (std::abs(Ip) < 1e-12) { // free-like origin: T -> 1, R -> 0
        sd.T[q] = 1.0;
        sd.R_plus[q] = 0.0;
        sd.R_minus[q] = 0.0;
      } else {
        sd.T[q] = 0.0;
        sd.R_plus[q] = -Im / Ip;
        sd.R_minus[q] = -Ip / Ip; // = -1; kept in this form for symmetry
      }
      return;
    }
    const auto mp = solve_jost(p, g, tau, Side::plus, opts.jost);
    const auto mm = solve_jost(p, g, tau, Side::minus, opts.jost);
    const cplx T = transmission(p, g, tau, mp);
    const cplx Rp = reflection(p, g, tau, Side::plus, T, mm);
    const cplx Rm = reflection(p, g, tau, Side::minus, T, mp);
    sd.T[q] = T;
    sd.R_plus[q] = Rp;
    sd.R_minus[q] = Rm;
    defect[q] = std::max(std::abs(std::norm(T) + std::norm(Rp) - 1.0),
                         std::abs(std::norm(T) + std::norm(Rm) - 1.0));
  });

  sd.unitarity_max_defect = 0;
  for (double d : defect) sd.unitarity_max_defect = std::max(sd.unitarity_max_defect, d);

  if (opts.classify_resonance) {
    const auto rr = detect_resonance(p, g, opts.resonance_taus, 0.02, opts.jost);
    sd.verdict = rr.verdict;
    sd.alpha = rr.alpha;
  }
  return sd;
}

} // namespace jostlp
