#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "jostlp/errors.hpp"
#include "jostlp/estimates.hpp"
#include "jostlp/grid.hpp"
#include "jostlp/jost_field.hpp"
#include "jostlp/parallel.hpp"
#include "jostlp/scattering.hpp"
#include "jostlp/window.hpp"

namespace jostlp {

enum class KernelProvenance { free_field, perturbed, leading_low_energy, remainder };

inline std::string to_string(KernelProvenance p) {
  switch (p) {
  case KernelProvenance::free_field: return "free";
  case KernelProvenance::perturbed: return "perturbed";
  case KernelProvenance::leading_low_energy: return "leading_low_energy";
  case KernelProvenance::remainder: return "remainder";
  }
  return "?";
}

//! Dense kernel of one dyadic localization operator at scale M.
struct KernelMatrix {
  double M = 1;
  SpatialGrid grid;
  KernelProvenance provenance = KernelProvenance::free_field;
  double calibration = 1.0 / (2.0 * pi); // prefactor fixed by the V = 0 anchor
  Eigen::MatrixXcd K;

  double symmetry_defect() const {
    double worst = 0;
    for (Eigen::Index i = 0; i < K.rows(); ++i)
      for (Eigen::Index j = i + 1; j < K.cols(); ++j)
        worst = std::max(worst, std::abs(K(i, j) - K(j, i)));
    return worst;
  }

  double max_imag() const {
    double worst = 0;
    for (Eigen::Index i = 0; i < K.rows(); ++i)
      for (Eigen::Index j = 0; j < K.cols(); ++j)
        worst = std::max(worst, std::abs(K(i, j).imag()));
    return worst;
  }

  double max_abs_entry() const {
    double worst = 0;
    for (Eigen::Index i = 0; i < K.rows(); ++i)
      for (Eigen::Index j = 0; j < K.cols(); ++j)
        worst = std::max(worst, std::abs(K(i, j)));
    return worst;
  }
};

//! Frequency grid adequate for assembling scale-M kernels on g: mirrored
//! bands over supp phi(./M) with spacing tied to the phase-increment rule.
inline FrequencyGrid kernel_band_grid(double M, const SpatialGrid &g,
                                      int min_per_band = 129) {
  return FrequencyGrid::dyadic_band(M, required_tau_spacing(g), min_per_band);
}

namespace detail {

inline void validate_band_coverage(const FrequencyGrid &fq, double M,
                                   const SpatialGrid &g, const char *who) {
  const double need = required_tau_spacing(g);
  if (!fq.covers(-2.0 * M, 2.0 * M))
    throw numeric_error(std::string(who) +
                        ": frequency coverage insufficient for scale M=" +
                        std::to_string(M));
  const double have = fq.max_spacing_within(0.5 * M, 2.0 * M);
  if (!(have <= need * (1.0 + 1e-9)))
    throw numeric_error(std::string(who) + ": oscillation budget violated; "
                        "required tau spacing <= " + std::to_string(need) +
                        ", grid has " + std::to_string(have));
}

inline std::vector<std::size_t> window_support_indices(const FrequencyGrid &fq,
                                                       const LpWindow &w, double M) {
  std::vector<std::size_t> sel;
  for (std::size_t q = 0; q < fq.size(); ++q)
    if (w.at_scale(fq[q], M) > 0.0) sel.push_back(q);
  return sel;
}

} // namespace detail

//! Kernel of the free localization operator: the Fourier multiplier
//!   K(x, y) = (1/2pi) \int phi(tau/M) e^{i tau (x - y)} d tau,
//! translation invariant, assembled from the distinct differences only.
inline KernelMatrix free_kernel(const LpWindow &w, double M, const SpatialGrid &g,
                                const FrequencyGrid &fq) {
  if (!(M > 0)) throw validation_error("free_kernel: M must be positive");
  detail::validate_band_coverage(fq, M, g, "free_kernel");
  const auto sel = detail::window_support_indices(fq, w, M);
  const auto wq = fq.trapezoid_weights();
  const int n = g.n();
  const double h = g.h();
  std::vector<cplx> kappa(std::size_t(2 * n - 1), cplx(0, 0));
  parallel_chunks(kappa.size(), 64, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t d = b; d < e; ++d) {
      const double z = (double(d) - double(n - 1)) * h;
      cplx sum = 0;
      for (std::size_t q : sel) {
        const double tau = fq[q];
        sum += wq[q] * w.at_scale(tau, M) * cplx(std::cos(tau * z), std::sin(tau * z));
      }
      kappa[d] = sum / (2.0 * pi);
    }
  });
  KernelMatrix km{M, g, KernelProvenance::free_field, 1.0 / (2.0 * pi),
                  Eigen::MatrixXcd(n, n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      km.K(i, j) = kappa[std::size_t(i - j + n - 1)];
  return km;
}

inline KernelMatrix free_kernel(const LpWindow &w, double M, const SpatialGrid &g) {
  return free_kernel(w, M, g, kernel_band_grid(M, g));
}

//! Kernel of the localization operator for the perturbed Hamiltonian,
//! assembled from the Jost representation
//!   K(x, y) = c \int phi(tau/M) T(tau) f_+(y, tau) f_-(x, tau) d tau, x < y,
//! with the roles of x and y exchanged otherwise. The prefactor c = 1/2pi
//! is calibrated so that V = 0 reproduces the free kernel exactly.
inline KernelMatrix perturbed_kernel(const JostField &jf, const ScatteringData &sd,
                                     const LpWindow &w, double M,
                                     const SpatialGrid &g) {
  if (!(M > 0)) throw validation_error("perturbed_kernel: M must be positive");
  if (jf.grid.n() != g.n() || std::abs(jf.grid.x_min() - g.x_min()) > 1e-12 ||
      std::abs(jf.grid.x_max() - g.x_max()) > 1e-12)
    throw validation_error("perturbed_kernel: Jost field grid must match the "
                           "kernel grid");
  if (sd.T.size() != jf.fgrid.size())
    throw validation_error("perturbed_kernel: scattering data does not match the "
                           "frequency grid");
  detail::validate_band_coverage(jf.fgrid, M, g, "perturbed_kernel");

  const auto sel = detail::window_support_indices(jf.fgrid, w, M);
  const auto wq = jf.fgrid.trapezoid_weights();
  const int n = g.n();
  const Eigen::Index ns = Eigen::Index(sel.size());

  Eigen::MatrixXcd Fm(ns, n), Fp(ns, n);
  Eigen::VectorXcd c(ns);
  for (Eigen::Index r = 0; r < ns; ++r) {
    const std::size_t q = sel[std::size_t(r)];
    const double tau = jf.fgrid[q];
    c(r) = wq[q] * w.at_scale(tau, M) * sd.T[q] / (2.0 * pi);
    for (int i = 0; i < n; ++i) {
      const double x = g.node(i);
      const cplx e = cplx(std::cos(tau * x), std::sin(tau * x));
      Fp(r, i) = e * jf.m_plus(Eigen::Index(q), i);
      Fm(r, i) = std::conj(e) * jf.m_minus(Eigen::Index(q), i);
    }
  }

  const Eigen::MatrixXcd G = Fm.transpose() * c.asDiagonal() * Fp;
  KernelMatrix km{M, g, KernelProvenance::perturbed, 1.0 / (2.0 * pi),
                  Eigen::MatrixXcd(n, n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      km.K(i, j) = (i < j) ? G(i, j) : G(j, i);
  return km;
}

//! Piecewise symbol of the low-energy leading kernel. Symmetric by
//! construction: the case is selected from (min, max) of the pair, and
//! x = 0 nodes paired with a positive partner fall in the sign-straddling
//! case (closure of the strict inequalities).
inline cplx leading_symbol(double x, double y, double tau, cplx T, cplx Rp, cplx Rm) {
  const double u = std::min(x, y), v = std::max(x, y);
  if (u <= 0.0 && v >= 0.0) return T;
  if (u > 0.0) {
    const cplx e = cplx(std::cos(2.0 * tau * u), std::sin(2.0 * tau * u));
    return (Rp + 1.0) * e - e + 1.0;
  }
  const cplx e = cplx(std::cos(2.0 * tau * v), -std::sin(2.0 * tau * v));
  return (Rm + 1.0) * e - e + 1.0;
}

//! Low-energy leading kernel
//!   K_M(x, y) = c \int e^{-i tau (x - y)} phi(tau/M) b(x, y, tau) d tau,
//! M <= 1, sharing the free-anchor calibration c = 1/2pi.
inline KernelMatrix leading_low_energy_kernel(const ScatteringData &sd,
                                              const LpWindow &w, double M,
                                              const SpatialGrid &g) {
  if (!(M > 0 && M <= 1.0))
    throw validation_error("leading_low_energy_kernel: requires M in (0, 1]");
  detail::validate_band_coverage(sd.grid, M, g, "leading_low_energy_kernel");
  const auto sel = detail::window_support_indices(sd.grid, w, M);
  const auto wq = sd.grid.trapezoid_weights();
  const int n = g.n();

  KernelMatrix km{M, g, KernelProvenance::leading_low_energy, 1.0 / (2.0 * pi),
                  Eigen::MatrixXcd(n, n)};
  parallel_chunks(std::size_t(n), 8, [&](std::size_t, std::size_t rb, std::size_t re) {
    for (std::size_t ii = rb; ii < re; ++ii) {
      const int i = int(ii);
      const double x = g.node(i);
      for (int j = 0; j < n; ++j) {
        const double y = g.node(j);
        cplx sum = 0;
        for (std::size_t q : sel) {
          const double tau = sd.grid[q];
          const cplx e = cplx(std::cos(tau * (x - y)), -std::sin(tau * (x - y)));
          sum += wq[q] * w.at_scale(tau, M) * e *
                 leading_symbol(x, y, tau, sd.T[q], sd.R_plus[q], sd.R_minus[q]);
        }
        km.K(i, j) = sum / (2.0 * pi);
      }
    }
  });
  return km;
}

//! Empirical constant of a kernel remainder estimate: the supremum over
//! entry pairs of |K_test - K_ref| over the decay shape
//!   (sum_pm <M(x pm y)>^{-sigma}) (<x>^{sigma-gamma} + <y>^{sigma-gamma}),
//! with the extra factor M in the low-energy (leading-kernel) mode.
inline EstimateReport verify_kernel_estimate(const KernelMatrix &K_test,
                                             const KernelMatrix &K_ref,
                                             double gamma, double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0) || !(sigma <= gamma - 1.0))
    throw hypothesis_error("verify_kernel_estimate: requires sigma in (0,1) and "
                           "sigma <= gamma - 1");
  if (K_test.K.rows() != K_ref.K.rows() || K_test.K.cols() != K_ref.K.cols())
    throw validation_error("verify_kernel_estimate: kernel sizes differ");
  if (std::abs(K_test.M - K_ref.M) > 1e-12)
    throw validation_error("verify_kernel_estimate: kernels have different scales");
  const double M = K_test.M;
  bool low_mode;
  if (K_ref.provenance == KernelProvenance::free_field) {
    if (!(M >= 1.0))
      throw validation_error("verify_kernel_estimate: high-energy mode requires "
                             "M >= 1 with the free reference");
    low_mode = false;
  } else if (K_ref.provenance == KernelProvenance::leading_low_energy) {
    if (!(M <= 1.0))
      throw validation_error("verify_kernel_estimate: low-energy mode requires "
                             "M <= 1 with the leading-kernel reference");
    low_mode = true;
  } else {
    throw validation_error("verify_kernel_estimate: reference must be the free or "
                           "the leading low-energy kernel");
  }

  const SpatialGrid &g = K_test.grid;
  double worst = 0;
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.node(i);
    for (int j = 0; j < g.n(); ++j) {
      const double y = g.node(j);
      const double osc = std::pow(bracket(M * (x - y)), -sigma) +
                         std::pow(bracket(M * (x + y)), -sigma);
      const double dec = std::pow(bracket(x), sigma - gamma) +
                         std::pow(bracket(y), sigma - gamma);
      double shape = osc * dec;
      if (low_mode) shape *= M;
      const double diff = std::abs(K_test.K(i, j) - K_ref.K(i, j));
      worst = std::max(worst, diff / shape);
    }
  }
  EstimateReport r;
  r.id = low_mode ? "low_energy_remainder" : "high_energy_remainder";
  r.constant = worst;
  r.gamma = gamma;
  r.sigma = sigma;
  if (!std::isfinite(r.constant))
    throw numeric_error("verify_kernel_estimate: non-finite constant");
  return r;
}

} // namespace jostlp
