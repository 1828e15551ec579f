#include <catch2/catch_amalgamated.hpp>

#include "jostlp/blocks.hpp"
#include "jostlp/io.hpp"
#include "jostlp/kernels.hpp"
#include "jostlp/window.hpp"

using namespace jostlp;

TEST_CASE("dyadic window") {
  const LpWindow w;

  SECTION("support and evenness") {
    CHECK(w(3.0) == 0.0);
    CHECK(w(0.4) == 0.0);
    CHECK(w(1.0) == Catch::Approx(1.0));
    for (double s : {0.6, 0.9, 1.4, 1.97}) {
      CHECK(w(s) > 0.0);
      CHECK(w(s) == Catch::Approx(w(-s)).margin(0.0));
    }
  }

  SECTION("dyadic dilates partition unity away from the origin") {
    CHECK(lp_partition_sum(1.0, -20, 20) == Catch::Approx(1.0).margin(1e-12));
    for (double s : {0.037, 0.7, 1.3, 2.0, 3.7, 191.0}) {
      CHECK(lp_partition_sum(s, -20, 20) == Catch::Approx(1.0).margin(1e-12));
      CHECK(lp_partition_sum(-s, -20, 20) == Catch::Approx(1.0).margin(1e-12));
    }
  }

  SECTION("scale bookkeeping") {
    CHECK(build_lp_window(3).scale() == 8.0);
    CHECK(build_lp_window(-2).scale() == 0.25);
  }
}

TEST_CASE("free kernel") {
  const LpWindow w;

  SECTION("translation invariance across rows") {
    const SpatialGrid g(-10.0, 10.0, 161);
    const auto km = free_kernel(w, 2.0, g);
    double worst = 0;
    for (int i = 0; i + 1 < g.n(); ++i)
      for (int j = 0; j + 1 < g.n(); ++j)
        worst = std::max(worst, std::abs(km.K(i, j) - km.K(i + 1, j + 1)));
    CHECK(worst <= 1e-10);
  }

  SECTION("dyadic rescaling identity") {
    // K_{2M}(x, y) = 2 K_M(2x, 2y): nodes of the doubled grid line up
    const SpatialGrid g1(-20.0, 20.0, 321);
    const SpatialGrid g2(-10.0, 10.0, 321);
    const auto k1 = free_kernel(w, 1.0, g1);
    const auto k2 = free_kernel(w, 2.0, g2);
    double worst = 0;
    for (int i = 0; i < g2.n(); ++i)
      for (int j = 0; j < g2.n(); ++j)
        worst = std::max(worst, std::abs(k2.K(i, j) - 2.0 * k1.K(i, j)));
    CHECK(worst < 1e-9);
  }

  SECTION("quadratic decay away from the diagonal") {
    const SpatialGrid g(-10.0, 10.0, 641);
    for (double M : {1.0, 4.0}) {
      const auto km = free_kernel(w, M, g);
      double worst = 0;
      for (int i = 0; i < g.n(); i += 5)
        for (int j = 0; j < g.n(); j += 5) {
          const double u = M * (g.node(i) - g.node(j));
          if (std::abs(u) >= 4.0)
            worst = std::max(worst, std::abs(km.K(i, j)) * u * u / M);
        }
      CHECK(worst < 2.5); // normalized tail stays uniformly bounded (~2.36 measured)
      CHECK(worst > 1.0); // and the bound is genuinely attained
    }
  }

  SECTION("oscillation budget violations are refused by name") {
    const SpatialGrid g(-10.0, 10.0, 161);
    const FrequencyGrid coarse = FrequencyGrid::dyadic_band(2.0, 1.0, 5);
    CHECK_THROWS_AS(free_kernel(w, 2.0, g, coarse), numeric_error);
    try {
      free_kernel(w, 2.0, g, coarse);
    } catch (const numeric_error &e) {
      CHECK(std::string(e.what()).find("required tau spacing") != std::string::npos);
    }
  }
}

TEST_CASE("perturbed kernel") {
  const LpWindow w;
  const SpatialGrid g(-10.0, 10.0, 401);
  SweepOptions so;
  so.classify_resonance = false;

  SECTION("zero potential reproduces the free kernel") {
    const auto fq = kernel_band_grid(2.0, g);
    const auto sweep = solve_sweep(Potential::zero(), g, fq, so);
    const auto Kp = perturbed_kernel(sweep.field, sweep.scattering, w, 2.0, g);
    const auto Kf = free_kernel(w, 2.0, g, fq);
    CHECK((Kp.K - Kf.K).cwiseAbs().maxCoeff() <= 1e-8);
  }

  SECTION("built-in potentials give symmetric real kernels") {
    const SpatialGrid solver(-10.0, 10.0, 3201);
    for (const auto &[pot, M] :
         std::vector<std::pair<Potential, double>>{
             {Potential::square_barrier(1.0, 1.0, 2.0), 4.0},
             {Potential::gaussian(1.0, 1.0, 2.0), 1.0},
             {Potential::sech2_barrier(1.0, 2.0), 0.25}}) {
      const auto fq = kernel_band_grid(M, g);
      const auto sweep = solve_sweep(pot, solver, fq, g, so);
      const auto Kp = perturbed_kernel(sweep.field, sweep.scattering, w, M, g);
      INFO(pot.describe() << " M=" << M);
      CHECK(Kp.symmetry_defect() <= 1e-6);
      CHECK(Kp.max_imag() <= 1e-6);
      CHECK(Kp.max_abs_entry() > 0.02 * M); // the kernel itself is O(M)
    }
  }

  SECTION("grid mismatch is rejected") {
    const auto fq = kernel_band_grid(2.0, g);
    const auto sweep = solve_sweep(Potential::zero(), g, fq, so);
    const SpatialGrid other(-10.0, 10.0, 201);
    CHECK_THROWS_AS(perturbed_kernel(sweep.field, sweep.scattering, w, 2.0, other),
                    validation_error);
  }
}

TEST_CASE("low-energy leading kernel") {
  const LpWindow w;
  const SpatialGrid g(-10.0, 10.0, 401);
  SweepOptions so;
  so.classify_resonance = false;

  SECTION("piecewise symbol is symmetric by construction") {
    const cplx T(0.3, 0.1), Rp(-0.4, 0.2), Rm(-0.5, -0.1);
    for (double x : {-3.0, -0.5, 0.0, 0.7, 2.0})
      for (double y : {-2.0, 0.0, 1.5})
        CHECK(leading_symbol(x, y, 0.3, T, Rp, Rm) ==
              leading_symbol(y, x, 0.3, T, Rp, Rm));
  }

  SECTION("zero potential collapses every case to the free symbol") {
    const double M = 0.5;
    const auto fq = kernel_band_grid(M, g);
    const auto sweep = solve_sweep(Potential::zero(), g, fq, so);
    const auto KM = leading_low_energy_kernel(sweep.scattering, w, M, g);
    const auto Kf = free_kernel(w, M, g, fq);
    CHECK((KM.K - Kf.K).cwiseAbs().maxCoeff() <= 1e-8);
  }

  SECTION("scales above 1 are refused") {
    const auto fq = kernel_band_grid(0.5, g);
    const auto sweep = solve_sweep(Potential::zero(), g, fq, so);
    CHECK_THROWS_AS(leading_low_energy_kernel(sweep.scattering, w, 2.0, g),
                    validation_error);
  }
}

TEST_CASE("kernel estimate verifier modes") {
  const LpWindow w;
  const SpatialGrid g(-10.0, 10.0, 201);
  SweepOptions so;
  so.classify_resonance = false;

  SECTION("zero potential: vanishing remainder constant") {
    const auto fq = kernel_band_grid(4.0, g);
    const auto sweep = solve_sweep(Potential::zero(), g, fq, so);
    const auto Kp = perturbed_kernel(sweep.field, sweep.scattering, w, 4.0, g);
    const auto Kf = free_kernel(w, 4.0, g, fq);
    const auto rep = verify_kernel_estimate(Kp, Kf, 2.0, 0.5);
    CHECK(rep.id == "high_energy_remainder");
    CHECK(rep.constant <= 1e-8);
  }

  SECTION("mode/scale mismatches are rejected") {
    const auto fq = kernel_band_grid(0.5, g);
    const auto sweep = solve_sweep(Potential::zero(), g, fq, so);
    const auto Kp = perturbed_kernel(sweep.field, sweep.scattering, w, 0.5, g);
    const auto Kf = free_kernel(w, 0.5, g, fq);
    // free reference demands M >= 1
    CHECK_THROWS_AS(verify_kernel_estimate(Kp, Kf, 2.0, 0.5), validation_error);
    // hypothesis window for sigma
    const auto KM = leading_low_energy_kernel(sweep.scattering, w, 0.5, g);
    CHECK_THROWS_AS(verify_kernel_estimate(Kp, KM, 1.2, 0.5), hypothesis_error);
  }
}

TEST_CASE("kernel dumps round-trip") {
  const LpWindow w;
  const SpatialGrid g(-5.0, 5.0, 65);
  const auto km = free_kernel(w, 1.0, g);
  const std::string path = "kernel_roundtrip.bin";
  write_kernel_dump(path, km);
  const auto back = read_kernel_dump(path);
  CHECK(back.M == km.M);
  CHECK(back.grid.n() == g.n());
  CHECK(back.provenance == km.provenance);
  CHECK((back.K - km.K).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("jost field dumps round-trip") {
  const SpatialGrid g(-5.0, 5.0, 101);
  const FrequencyGrid fq = FrequencyGrid::uniform_symmetric(2.0, 4, false);
  SweepOptions so;
  so.classify_resonance = false;
  const auto sweep = solve_sweep(Potential::gaussian(1.0, 1.0, 2.0), g, fq, so);
  const std::string path = "jost_roundtrip.bin";
  write_jost_dump(path, sweep.field);
  const auto back = read_jost_dump(path);
  CHECK(back.grid.n() == g.n());
  CHECK(back.fgrid.size() == fq.size());
  CHECK((back.m_plus - sweep.field.m_plus).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.m_minus - sweep.field.m_minus).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path.c_str());
}
