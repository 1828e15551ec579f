#include <catch2/catch_amalgamated.hpp>

#include "jostlp/grid.hpp"
#include "jostlp/io.hpp"
#include "jostlp/potential.hpp"

using namespace jostlp;

TEST_CASE("spatial grid invariants") {
  const SpatialGrid g(-40.0, 40.0, 2049);
  REQUIRE(g.h() == Catch::Approx(80.0 / 2048.0));
  REQUIRE(g.node(0) == -40.0);
  REQUIRE(g.node(g.n() - 1) == Catch::Approx(40.0));

  CHECK_THROWS_AS(SpatialGrid(0.0, 40.0, 100), validation_error);   // needs x_min < 0
  CHECK_THROWS_AS(SpatialGrid(-40.0, -1.0, 100), validation_error); // needs 0 < x_max
  CHECK_THROWS_AS(SpatialGrid(-1.0, 1.0, 2), validation_error);     // n >= 3

  const auto w = g.trapezoid_weights();
  double total = 0;
  for (double v : w) total += v;
  CHECK(total == Catch::Approx(80.0)); // weights integrate the constant 1

  const auto fine = g.refined();
  CHECK(fine.n() == 2 * g.n() - 1);
  CHECK(fine.node(2) == Catch::Approx(g.node(1)));
}

TEST_CASE("frequency grid symmetry and spacing") {
  const auto fq = FrequencyGrid::uniform_symmetric(2.0, 8, true);
  REQUIRE(fq.size() == 17);
  CHECK(fq.includes_zero());
  for (std::size_t i = 0; i < fq.size(); ++i)
    CHECK(fq[i] == Catch::Approx(-fq[fq.size() - 1 - i]).margin(1e-15));

  const auto band = FrequencyGrid::dyadic_band(4.0, 0.05);
  CHECK(band.covers(-8.0, 8.0));
  CHECK(band.max_spacing_within(2.0, 8.0) <= 0.05 * (1 + 1e-12));
  // two-band weights integrate phi(tau/M) like two separate panels
  const auto w = band.trapezoid_weights();
  double mass = 0;
  for (std::size_t q = 0; q < band.size(); ++q) mass += w[q];
  CHECK(mass == Catch::Approx(2 * (6.0 + 2 * band.min_spacing())).epsilon(1e-12));

  CHECK_THROWS_AS(FrequencyGrid(std::vector<double>{-1.0, 0.5}, false),
                  validation_error); // asymmetric
}

TEST_CASE("potential point values") {
  const auto sb = Potential::square_barrier(1.0, 1.0);
  CHECK(sb(0.0) == 1.0);   // inside the barrier
  CHECK(sb(5.0) == 0.0);   // outside the support
  CHECK(sb(1.0) == 0.5);   // jump node takes the mean value
  CHECK(sb(-1.0) == 0.5);

  const auto ga = Potential::gaussian(2.0, 1.0);
  CHECK(ga(0.0) == 2.0);   // peak value

  CHECK_THROWS_AS(sb(std::numeric_limits<double>::infinity()), validation_error);
}

TEST_CASE("weighted norm against exact antiderivatives") {
  // align the jump nodes with the grid so trapezoid converges at second order
  const SpatialGrid g(-8.0, 8.0, 3201); // h = 0.005, 1/h integer
  const auto sb = Potential::square_barrier(1.0, 1.0);

  CHECK(weighted_l1_norm(Potential::zero(), 3.0, g) == 0.0);
  // gamma = 0: \int_{-1}^{1} 1 dx = 2
  CHECK(weighted_l1_norm(sb, 0.0, g) == Catch::Approx(2.0).margin(1e-6));
  // gamma = 2: \int_{-1}^{1} (1 + x^2) dx = 8/3
  CHECK(weighted_l1_norm(sb, 2.0, g) == Catch::Approx(8.0 / 3.0).margin(1e-6));

  CHECK_THROWS_AS(weighted_l1_norm(sb, -1.0, g), validation_error);
}

TEST_CASE("weighted norm is monotone in gamma and refinement-stable") {
  const SpatialGrid g(-12.0, 12.0, 1601);
  const std::vector<Potential> builtins = {
      Potential::square_barrier(1.0, 1.0), Potential::gaussian(1.5, 1.0),
      Potential::sech2_barrier(2.0)};
  for (const auto &p : builtins) {
    double prev = -1;
    for (double gamma : {0.0, 0.5, 1.0, 2.0, 3.0}) {
      const double v = weighted_l1_norm(p, gamma, g);
      CHECK(v >= prev);
      prev = v;
    }
  }
  // smooth kinds: halving h moves the quadrature by less than the tolerance
  for (const auto &p : {Potential::gaussian(1.5, 1.0), Potential::sech2_barrier(2.0)}) {
    const double coarse = weighted_l1_norm(p, 2.0, g);
    const double fine = weighted_l1_norm(p, 2.0, g.refined());
    CHECK(std::abs(coarse - fine) < 1e-8);
  }
}

TEST_CASE("built-in potentials are even") {
  const SpatialGrid g(-9.0, 9.0, 601);
  for (const auto &p : {Potential::square_barrier(1.0, 1.0),
                        Potential::gaussian(1.0, 2.0), Potential::sech2_barrier(1.0)}) {
    for (int i = 0; i < g.n(); ++i)
      CHECK(p(g.node(i)) == Catch::Approx(p(-g.node(i))).margin(1e-15));
  }
}

TEST_CASE("sampled potential interpolation and zero extension") {
  const auto p = Potential::sampled({-1.0, 0.0, 1.0}, {0.0, 2.0, 0.0}, 2.0);
  CHECK(p(0.0) == 2.0);
  CHECK(p(0.5) == Catch::Approx(1.0)); // linear interpolation
  CHECK(p(3.0) == 0.0);                // zero outside the sampled range
  CHECK(p(-3.0) == 0.0);

  CHECK_THROWS_AS(Potential::sampled({0.0, 0.0}, {1.0, 1.0}, 2.0), validation_error);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Potential::sampled({0.0, 1.0}, {nan, 1.0}, 2.0), validation_error);
}

TEST_CASE("sampled potential round-trips through the CSV loader") {
  const std::string path = "test_potential.csv";
  {
    std::ofstream os(path);
    os << "x,V\n";
    for (int i = 0; i <= 20; ++i) {
      const double x = -2.0 + 0.2 * i;
      os << format_double(x) << "," << format_double(std::exp(-x * x)) << "\n";
    }
  }
  auto [xs, vs] = load_two_column_csv(path);
  REQUIRE(xs.size() == 21);
  const auto p = Potential::sampled(std::move(xs), std::move(vs), 2.0);
  CHECK(p(0.0) == Catch::Approx(1.0));
  std::remove(path.c_str());
}
