#pragma once

#include <cmath>
#include <vector>

#include "jostlp/errors.hpp"
#include "jostlp/grid.hpp"
#include "jostlp/kernels.hpp"
#include "jostlp/parallel.hpp"
#include "jostlp/potential.hpp"
#include "jostlp/scattering.hpp"
#include "jostlp/volterra.hpp"
#include "jostlp/window.hpp"

namespace jostlp {

enum class Hamiltonian { free_field, perturbed };

//! Applies dyadic localization blocks phi(sqrt(H0)/M) and phi(sqrt(H)/M)
//! to grid functions. The perturbed application streams over the
//! frequency band: for each tau it solves the Jost equations, then folds
//! the split kernel into prefix/suffix cumulative sums. This evaluates
//! exactly the same trapezoid double sum as the dense kernel matrix-vector
//! product (tests pin the agreement), with O(N) memory per frequency.
class BlockEngine {
public:
  BlockEngine(Potential p, SpatialGrid g, JostOptions opts = {})
      : pot_(std::move(p)), grid_(std::move(g)), opts_(opts) {
    opts_.check_residual = false; // sweeps spot-check residuals separately
  }

  const SpatialGrid &grid() const { return grid_; }
  const Potential &potential() const { return pot_; }

  //! A scale is representable when its center frequency M is within the
  //! grid's Nyquist band pi/h. (The window's upper support edge 2M may
  //! exceed it; content there is negligible for decaying spectra.)
  void validate_scale(double M) const {
    if (!(M > 0)) throw validation_error("block apply: M must be positive");
    const double nyq = pi / grid_.h();
    if (M > nyq * (1.0 + 1e-12))
      throw numeric_error("block apply: scale M=" + std::to_string(M) +
                          " beyond the grid Nyquist frequency " + std::to_string(nyq) +
                          "; requires spacing h <= " + std::to_string(pi / M));
  }

  std::vector<std::vector<cplx>>
  apply_batch(const std::vector<std::vector<cplx>> &fs, double M,
              Hamiltonian which) const {
    validate_scale(M);
    for (const auto &f : fs)
      if (int(f.size()) != grid_.n())
        throw validation_error("block apply: vector length does not match grid");
    const FrequencyGrid fq = kernel_band_grid(M, grid_);
    const auto wq = fq.trapezoid_weights();
    const LpWindow w;
    const auto sel = detail::window_support_indices(fq, w, M);
    const std::size_t n = std::size_t(grid_.n());
    const std::size_t nf = fs.size();
    const auto wx = grid_.trapezoid_weights();

    const std::size_t n_chunks = std::min<std::size_t>(16, std::max<std::size_t>(1, sel.size()));
    const std::size_t chunk_len = (sel.size() + n_chunks - 1) / n_chunks;
    std::vector<std::vector<cplx>> partial(n_chunks,
                                           std::vector<cplx>(nf * n, cplx(0, 0)));

    parallel_chunks(sel.size(), chunk_len, [&](std::size_t c, std::size_t qb,
                                               std::size_t qe) {
      auto &acc = partial[c];
      std::vector<cplx> fp(n), fm(n), suffix(n), prefix(n);
      std::vector<cplx> mp, mm;
      for (std::size_t qq = qb; qq < qe; ++qq) {
        const std::size_t q = sel[qq];
        const double tau = fq[q];
        cplx T(1.0, 0.0);
        if (which == Hamiltonian::perturbed && !pot_.is_zero()) {
          mp = solve_jost(pot_, grid_, tau, Side::plus, opts_);
          mm = solve_jost(pot_, grid_, tau, Side::minus, opts_);
          T = transmission(pot_, grid_, tau, mp);
          for (std::size_t i = 0; i < n; ++i) {
            const double x = grid_.node(int(i));
            const cplx e(std::cos(tau * x), std::sin(tau * x));
            fp[i] = e * mp[i];
            fm[i] = std::conj(e) * mm[i];
          }
        } else {
          for (std::size_t i = 0; i < n; ++i) {
            const double x = grid_.node(int(i));
            const cplx e(std::cos(tau * x), std::sin(tau * x));
            fp[i] = e;
            fm[i] = std::conj(e);
          }
        }
        const cplx cq = wq[q] * w.at_scale(tau, M) * T / (2.0 * pi);
        for (std::size_t kf = 0; kf < nf; ++kf) {
          const auto &f = fs[kf];
          cplx run(0, 0);
          for (std::size_t i = n; i-- > 0;) { // strict suffix: sum over j > i
            suffix[i] = run;
            run += wx[i] * fp[i] * f[i];
          }
          run = cplx(0, 0);
          for (std::size_t i = 0; i < n; ++i) { // inclusive prefix: j <= i
            run += wx[i] * fm[i] * f[i];
            prefix[i] = run;
          }
          cplx *out = acc.data() + kf * n;
          for (std::size_t i = 0; i < n; ++i)
            out[i] += cq * (fm[i] * suffix[i] + fp[i] * prefix[i]);
        }
      }
    });

    std::vector<std::vector<cplx>> out(nf, std::vector<cplx>(n, cplx(0, 0)));
    for (std::size_t c = 0; c < n_chunks; ++c)
      for (std::size_t kf = 0; kf < nf; ++kf)
        for (std::size_t i = 0; i < n; ++i)
          out[kf][i] += partial[c][kf * n + i];
    return out;
  }

  std::vector<cplx> apply(const std::vector<cplx> &f, double M,
                          Hamiltonian which) const {
    return apply_batch({f}, M, which)[0];
  }

  std::vector<cplx> apply_dyadic(const std::vector<cplx> &f, int j,
                                 Hamiltonian which) const {
    return apply(f, std::ldexp(1.0, j), which);
  }

  //! Dense kernel at scale M on this grid (cross-check path; the solver
  //! grid equals the application grid so the two paths share quadrature).
  KernelMatrix dense_kernel(double M, Hamiltonian which) const {
    validate_scale(M);
    const LpWindow w;
    if (which == Hamiltonian::free_field) return free_kernel(w, M, grid_);
    const FrequencyGrid fq = kernel_band_grid(M, grid_);
    SweepOptions so;
    so.jost = opts_;
    so.classify_resonance = false;
    const auto sweep = solve_sweep(pot_, grid_, fq, so);
    return perturbed_kernel(sweep.field, sweep.scattering, w, M, grid_);
  }

  //! Dense-path application (matrix-vector with quadrature weights folded
  //! in); used to pin agreement with the streamed path.
  std::vector<cplx> apply_dense(const std::vector<cplx> &f, double M,
                                Hamiltonian which) const {
    const KernelMatrix km = dense_kernel(M, which);
    const auto wx = grid_.trapezoid_weights();
    const std::size_t n = std::size_t(grid_.n());
    std::vector<cplx> out(n, cplx(0, 0));
    for (std::size_t i = 0; i < n; ++i) {
      cplx sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        sum += km.K(Eigen::Index(i), Eigen::Index(j)) * wx[j] * f[j];
      out[i] = sum;
    }
    return out;
  }

private:
  Potential pot_;
  SpatialGrid grid_;
  JostOptions opts_;
};

} // namespace jostlp
