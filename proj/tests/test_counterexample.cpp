#include <catch2/catch_amalgamated.hpp>

#include "jostlp/shells.hpp"

using namespace jostlp;

TEST_CASE("shell profile point values") {
  const auto sf = dyadic_shell_function(3);
  CHECK(sf(1.5) == Catch::Approx(1.0 / std::sqrt(1.5)).epsilon(1e-15));
  CHECK(sf(-1.5) == sf(1.5));
  CHECK(sf(0.5) == 0.0);            // below the first shell
  CHECK(sf(16.0) == Catch::Approx(0.25)); // top edge 2^{N+1} included
  CHECK(sf(16.5) == 0.0);           // beyond the top shell

  CHECK_THROWS_AS(dyadic_shell_function(-1), validation_error);
  CHECK_THROWS_AS(dyadic_shell_function(3, 2), validation_error);
}

TEST_CASE("exact shell antiderivatives") {
  // each shell contributes ln 2 per side to both quantities
  CHECK(shell_l2_norm_sq(dyadic_shell_function(0)) ==
        Catch::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
  CHECK(riesz_at_zero(dyadic_shell_function(0)) ==
        Catch::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
  CHECK(riesz_at_zero(dyadic_shell_function(10)) ==
        Catch::Approx(22.0 * std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("shell additivity") {
  for (int N : {1, 5, 12}) {
    const double with_top = riesz_at_zero(dyadic_shell_function(N));
    const double without = riesz_at_zero(dyadic_shell_function(N - 1));
    CHECK(with_top - without == Catch::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("log-radial quadrature cross-check") {
  for (int N : {0, 4, 12, 20}) {
    const auto sf = dyadic_shell_function(N);
    const double exact = shell_l2_norm_sq(sf);
    const double quad = shell_l2_norm_sq_quadrature(sf);
    CHECK(std::abs(quad - exact) / exact < 0.005);
  }
}

TEST_CASE("linear growth of the Riesz value in the shell count") {
  const double v16 = riesz_at_zero(dyadic_shell_function(16));
  const double v32 = riesz_at_zero(dyadic_shell_function(32));
  const double v64 = riesz_at_zero(dyadic_shell_function(64));
  CHECK(v32 / v16 == Catch::Approx(33.0 / 17.0).epsilon(1e-12));
  CHECK(v64 / v32 > v32 / v16); // approaching 2 from below
}

TEST_CASE("scaling report: quadratic vs linear growth") {
  const auto rep = shell_scaling_report({4, 8, 16, 32, 64});
  // exact closed forms are pure powers of the shell count
  CHECK(rep.riesz_sq_fit.slope == Catch::Approx(2.0).margin(1e-9));
  CHECK(rep.norm_sq_fit.slope == Catch::Approx(1.0).margin(1e-9));
  CHECK(rep.riesz_sq_fit.rss < 1e-18);

  // the ratio is strictly increasing and doubles (within 10%) per doubling
  for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i)
    CHECK(rep.rows[i + 1].ratio > rep.rows[i].ratio);
  const double pair = rep.rows[4].ratio / rep.rows[3].ratio; // N = 32 -> 64
  CHECK(std::abs(pair - 2.0) <= 0.2);

  CHECK_THROWS_AS(shell_scaling_report({4, 8}), validation_error);
}
