// Minimal library walkthrough: solve the Jost equations for a square
// barrier, print T and R over a few frequencies, classify the origin,
// and show one dyadic-block norm comparison.

#include <cstdio>

#include "jostlp/jostlp.hpp"

int main() {
  using namespace jostlp;

  const auto barrier = Potential::square_barrier(1.0, 1.0, 2.0);
  const SpatialGrid g(-2.5, 2.5, 4001);

  std::printf("tau      |T|^2      |R|^2      |T|^2+|R|^2-1\n");
  for (double tau : {0.5, 1.0, 2.0, 5.0}) {
    const auto mp = solve_jost(barrier, g, tau, Side::plus);
    const auto mm = solve_jost(barrier, g, tau, Side::minus);
    const cplx T = transmission(barrier, g, tau, mp);
    const cplx R = reflection(barrier, g, tau, Side::plus, T, mm);
    std::printf("%-8g %-10.6f %-10.6f %+.3e\n", tau, std::norm(T), std::norm(R),
                std::norm(T) + std::norm(R) - 1.0);
  }

  const auto rr = detect_resonance(barrier, g, {0.2, 0.1, 0.05, 0.025});
  std::printf("origin: %s (|alpha| = %g)\n", to_string(rr.verdict).c_str(),
              std::abs(rr.alpha));

  const SpatialGrid gb(-40.0, 40.0, 1025);
  BlockEngine engine(Potential::gaussian(1.0, 1.0, 2.0), gb);
  std::vector<cplx> f(std::size_t(gb.n()));
  for (int i = 0; i < gb.n(); ++i)
    f[std::size_t(i)] = std::exp(-sq(gb.node(i))) * std::cos(2.0 * gb.node(i));
  BesovParams params{0.2, 2.0, -4, 4};
  const auto nf = besov_norm(f, params, engine, Hamiltonian::free_field);
  const auto np = besov_norm(f, params, engine, Hamiltonian::perturbed);
  std::printf("dyadic norm, free %.8f vs perturbed %.8f (ratio %.6f)\n", nf.total,
              np.total, np.total / nf.total);
  return 0;
}
