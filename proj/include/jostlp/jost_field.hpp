#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "jostlp/errors.hpp"
#include "jostlp/grid.hpp"
#include "jostlp/parallel.hpp"
#include "jostlp/scattering.hpp"
#include "jostlp/volterra.hpp"

namespace jostlp {

//! Solved modified Jost data on a space x frequency grid. Rows index tau,
//! columns index x. The stored grid may be coarser than the solver grid
//! (every stride-th node), which keeps kernels tractable while the
//! Volterra integrations stay fully resolved.
struct JostField {
  SpatialGrid grid;          // evaluation grid (columns)
  FrequencyGrid fgrid;       // rows
  double solver_h = 0;       // spacing the equations were solved at
  Eigen::MatrixXcd m_plus;   // m_+(x, tau)
  Eigen::MatrixXcd m_minus;  // m_-(x, tau)
  std::vector<double> residual_plus;  // per-tau spot-checked defects
  std::vector<double> residual_minus;

  cplx remainder(Side side, std::size_t q, int i) const {
    const cplx m = side == Side::plus ? m_plus(Eigen::Index(q), i)
                                      : m_minus(Eigen::Index(q), i);
    return m - 1.0;
  }

  double max_residual() const {
    double r = 0;
    for (double v : residual_plus) r = std::max(r, v);
    for (double v : residual_minus) r = std::max(r, v);
    return r;
  }
};

struct SweepResult {
  JostField field;
  ScatteringData scattering;
};

//! Solves m_pm over the whole frequency grid (the tau sweep is the
//! parallel axis) and assembles both the Jost field on eval_grid and the
//! scattering coefficients. solver_grid nodes must contain eval_grid
//! nodes (integer stride).
inline SweepResult solve_sweep(const Potential &p, const SpatialGrid &solver_grid,
                               const FrequencyGrid &fq,
                               const SpatialGrid &eval_grid,
                               const SweepOptions &opts = {}) {
  const int stride_num = solver_grid.n() - 1;
  const int stride_den = eval_grid.n() - 1;
  if (stride_num % stride_den != 0 ||
      std::abs(solver_grid.x_min() - eval_grid.x_min()) > 1e-12 ||
      std::abs(solver_grid.x_max() - eval_grid.x_max()) > 1e-12)
    throw validation_error("solve_sweep: eval grid must be a decimation of the "
                           "solver grid");
  const int stride = stride_num / stride_den;

  const std::size_t nq = fq.size();
  JostField jf{eval_grid, fq, solver_grid.h(),
               Eigen::MatrixXcd(Eigen::Index(nq), eval_grid.n()),
               Eigen::MatrixXcd(Eigen::Index(nq), eval_grid.n()),
               std::vector<double>(nq, 0.0), std::vector<double>(nq, 0.0)};
  ScatteringData sd{fq, std::vector<cplx>(nq, 0), std::vector<cplx>(nq, 0),
                    std::vector<cplx>(nq, 0), Resonance::resonant, 0, 0};
  std::vector<double> defect(nq, 0.0);

  parallel_for(nq, [&](std::size_t q) {
    const double tau = fq[q];
    const auto mp = solve_jost(p, solver_grid, tau, Side::plus, opts.jost);
    const auto mm = solve_jost(p, solver_grid, tau, Side::minus, opts.jost);
    for (int i = 0; i < eval_grid.n(); ++i) {
      jf.m_plus(Eigen::Index(q), i) = mp[std::size_t(i * stride)];
      jf.m_minus(Eigen::Index(q), i) = mm[std::size_t(i * stride)];
    }
    jf.residual_plus[q] =
        detail::spot_check_residual(detail::sample_potential(p, solver_grid), mp,
                                    solver_grid, tau, Side::plus, 5);
    jf.residual_minus[q] =
        detail::spot_check_residual(detail::sample_potential(p, solver_grid), mm,
                                    solver_grid, tau, Side::minus, 5);
    if (tau == 0.0) {
      const cplx Ip = detail::weighted_potential_integral(p, solver_grid, mp, 0.0);
      const cplx Im = detail::weighted_potential_integral(p, solver_grid, mm, 0.0);
      if (std::abs(Ip) < 1e-12) {
        sd.T[q] = 1.0;
      } else {
        sd.T[q] = 0.0;
        sd.R_plus[q] = -Im / Ip;
        sd.R_minus[q] = -1.0;
      }
      return;
    }
    const cplx T = transmission(p, solver_grid, tau, mp);
    sd.T[q] = T;
    sd.R_plus[q] = reflection(p, solver_grid, tau, Side::plus, T, mm);
    sd.R_minus[q] = reflection(p, solver_grid, tau, Side::minus, T, mp);
    defect[q] = std::max(std::abs(std::norm(T) + std::norm(sd.R_plus[q]) - 1.0),
                         std::abs(std::norm(T) + std::norm(sd.R_minus[q]) - 1.0));
  });

  for (double d : defect) sd.unitarity_max_defect = std::max(sd.unitarity_max_defect, d);
  if (opts.classify_resonance) {
    const auto rr = detect_resonance(p, solver_grid, opts.resonance_taus, 0.02, opts.jost);
    sd.verdict = rr.verdict;
    sd.alpha = rr.alpha;
  }
  return SweepResult{std::move(jf), std::move(sd)};
}

inline SweepResult solve_sweep(const Potential &p, const SpatialGrid &g,
                               const FrequencyGrid &fq,
                               const SweepOptions &opts = {}) {
  return solve_sweep(p, g, fq, g, opts);
}

//! Sup over x (and both sign families) of the scattering-identity defect
//!   T(tau) m_∓(x, tau) - R_±(tau) e^{±2 i tau x} m_±(x, tau) - m_±(x, -tau).
//! All quantities are taken from independently computed entries of the
//! sweep, so the result is a genuine consistency residual.
inline double check_scattering_identity(const JostField &jf,
                                        const ScatteringData &sd, double tau) {
  const int qp = jf.fgrid.index_of(tau);
  const int qm = jf.fgrid.index_of(-tau);
  if (qp < 0 || qm < 0)
    throw validation_error("check_scattering_identity: tau and -tau must both "
                           "be frequency-grid nodes");
  const std::size_t a = std::size_t(qp), b = std::size_t(qm);
  const cplx T = sd.T[a], Rp = sd.R_plus[a], Rm = sd.R_minus[a];
  double worst = 0;
  for (int i = 0; i < jf.grid.n(); ++i) {
    const double x = jf.grid.node(i);
    const cplx e2 = cplx(std::cos(2 * tau * x), std::sin(2 * tau * x));
    const cplx lhs_p = T * jf.m_minus(Eigen::Index(a), i);
    const cplx rhs_p = Rp * e2 * jf.m_plus(Eigen::Index(a), i) + jf.m_plus(Eigen::Index(b), i);
    const cplx lhs_m = T * jf.m_plus(Eigen::Index(a), i);
    const cplx rhs_m = Rm * std::conj(e2) * jf.m_minus(Eigen::Index(a), i) +
                       jf.m_minus(Eigen::Index(b), i);
    worst = std::max({worst, std::abs(lhs_p - rhs_p), std::abs(lhs_m - rhs_m)});
  }
  return worst;
}

} // namespace jostlp
