#include <catch2/catch_amalgamated.hpp>

#include "jostlp/estimates.hpp"
#include "jostlp/gronwall.hpp"
#include "jostlp/holder.hpp"
#include "jostlp/reference.hpp"
#include "jostlp/volterra.hpp"

using namespace jostlp;

TEST_CASE("panel kernel D") {
  // D(t, 0) = t (the tau -> 0 limit of the running integral)
  CHECK(kernel_D(1.7, 0.0) == cplx(1.7, 0.0));
  CHECK(kernel_D(-3.2, 0.0) == cplx(-3.2, 0.0));
  // D(0, tau) = 0: empty integral
  CHECK(std::abs(kernel_D(0.0, 2.3)) == 0.0);
  // D(1, pi) = (e^{2 i pi} - 1)/(2 i pi) = 0 by periodicity
  CHECK(std::abs(kernel_D(1.0, pi)) < 1e-15);
  // generic value against the defining formula
  const double t = 0.8, tau = 1.9;
  const cplx direct = (std::exp(2.0 * iu * t * tau) - 1.0) / (2.0 * iu * tau);
  CHECK(std::abs(kernel_D(t, tau) - direct) < 1e-15);
}

TEST_CASE("panel kernel tau-derivative") {
  // tau = 0 limit: i t^2
  CHECK(kernel_D_dtau(1.5, 0.0) == cplx(0.0, 2.25));
  // finite differences of D in tau, including the small-angle branch
  for (double t : {0.3, 2.0, -4.0}) {
    for (double tau : {1e-5, 1e-3, 0.7, 3.0}) {
      const double dt = 1e-6 * std::max(1.0, std::abs(tau));
      const cplx fd = (kernel_D(t, tau + dt) - kernel_D(t, tau - dt)) / (2.0 * dt);
      CHECK(std::abs(kernel_D_dtau(t, tau) - fd) < 5e-8 * std::max(1.0, t * t));
    }
  }
}

TEST_CASE("zero potential gives m identically 1") {
  const SpatialGrid g(-10.0, 10.0, 501);
  for (double tau : {0.0, 0.5, 3.0}) {
    for (Side side : {Side::plus, Side::minus}) {
      const auto m = solve_jost(Potential::zero(), g, tau, side);
      for (const auto &v : m) CHECK(v == cplx(1.0, 0.0));
    }
  }
}

TEST_CASE("square barrier matches the plane-wave matching closed form") {
  const auto barrier = Potential::square_barrier(1.0, 1.0, 2.0);
  const SpatialGrid g(-2.5, 2.5, 8001); // h = 0.000625, edges on nodes
  const double tau = 1.0;
  const auto m = solve_jost(barrier, g, tau, Side::plus);
  double worst = 0;
  for (int i = 0; i < g.n(); i += 7) {
    const cplx ref = reference::barrier_m_plus(1.0, 1.0, g.node(i), tau);
    worst = std::max(worst, std::abs(m[std::size_t(i)] - ref));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("remainder decays like 1/tau at high frequency") {
  const auto barrier = Potential::square_barrier(1.0, 1.0, 2.0);
  const SpatialGrid g(-2.5, 2.5, 4001);
  auto sup_rem = [&](double tau) {
    const auto m = solve_jost(barrier, g, tau, Side::plus);
    double s = 0;
    for (const auto &v : m) s = std::max(s, std::abs(v - 1.0));
    return s;
  };
  const double r = sup_rem(20.0) / sup_rem(10.0);
  CHECK(r > 0.4);
  CHECK(r < 0.6);
}

TEST_CASE("conjugation symmetry in tau") {
  const auto pot = Potential::gaussian(1.0, 1.0, 2.0);
  const SpatialGrid g(-7.0, 7.0, 1401);
  for (double tau : {0.7, 2.5}) {
    for (Side side : {Side::plus, Side::minus}) {
      const auto mp = solve_jost(pot, g, tau, side);
      const auto mn = solve_jost(pot, g, -tau, side);
      double worst = 0;
      for (std::size_t i = 0; i < mp.size(); ++i)
        worst = std::max(worst, std::abs(mn[i] - std::conj(mp[i])));
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("m is exactly 1 beyond the support on the asymptotic side") {
  const auto barrier = Potential::square_barrier(1.0, 1.0, 2.0);
  const SpatialGrid g(-4.0, 4.0, 1601); // h = 0.005: +-1 are nodes
  const auto mp = solve_jost(barrier, g, 1.3, Side::plus);
  const auto mm = solve_jost(barrier, g, 1.3, Side::minus);
  for (int i = 0; i < g.n(); ++i) {
    if (g.node(i) > 1.0) CHECK(mp[std::size_t(i)] == cplx(1.0, 0.0));
    if (g.node(i) < -1.0) CHECK(mm[std::size_t(i)] == cplx(1.0, 0.0));
  }
}

TEST_CASE("equation residual of the recurrence is at roundoff level") {
  const auto pot = Potential::sech2_barrier(1.5, 2.0);
  const SpatialGrid g(-12.0, 12.0, 2401);
  for (double tau : {0.0, 0.4, 6.0}) {
    const auto m = solve_jost(pot, g, tau, Side::plus);
    CHECK(jost_residual(pot, g, tau, Side::plus, m, 17) < 1e-11);
  }
}

TEST_CASE("tau derivative of m") {
  const SpatialGrid g(-2.5, 2.5, 4001);
  const auto barrier = Potential::square_barrier(1.0, 1.0, 2.0);

  SECTION("zero potential: derivative vanishes") {
    const auto w = jost_derivative(Potential::zero(), g, 1.0, Side::plus);
    for (const auto &v : w) CHECK(std::abs(v) == 0.0);
  }

  SECTION("matches central finite differences in tau") {
    const double tau = 2.0, step = 1e-3;
    for (Side side : {Side::plus, Side::minus}) {
      const auto w = jost_derivative(barrier, g, tau, side);
      const auto mp = solve_jost(barrier, g, tau + step, side);
      const auto mm = solve_jost(barrier, g, tau - step, side);
      double worst = 0;
      for (std::size_t i = 0; i < w.size(); ++i)
        worst = std::max(worst, std::abs(w[i] - (mp[i] - mm[i]) / (2.0 * step)));
      CHECK(worst < 1e-4);
    }
  }

  SECTION("quadratic-weight bound is finite and refinement-stable") {
    auto weighted_sup = [&](const SpatialGrid &grid) {
      const auto w = jost_derivative(barrier, grid, 2.0, Side::plus);
      double s = 0;
      for (int i = 0; i < grid.n(); ++i)
        s = std::max(s, std::abs(w[std::size_t(i)]) / sq(bracket(grid.node(i))));
      return s;
    };
    const double coarse = weighted_sup(g);
    const double fine = weighted_sup(g.refined());
    CHECK(std::isfinite(coarse));
    CHECK(std::abs(coarse - fine) / fine < 0.02);
  }

  SECTION("only first derivatives are built") {
    CHECK_THROWS_AS(jost_derivative(barrier, g, 1.0, Side::plus, 2), validation_error);
  }
}

TEST_CASE("gronwall envelope") {
  const SpatialGrid g(-5.0, 5.0, 1001);
  const std::size_t n = std::size_t(g.n());

  SECTION("no feedback returns a unchanged") {
    std::vector<double> a(n), b(n, 0.0);
    for (int i = 0; i < g.n(); ++i) a[std::size_t(i)] = 1.0 + std::sin(g.node(i));
    const auto v = gronwall_bound(a, b, g);
    for (std::size_t i = 0; i < n; ++i) CHECK(v[i] == a[i]);
  }

  SECTION("constant a collapses to C exp(B)") {
    // the rational transport matches the exponential at O(h^2); resolve
    // accordingly for the 1e-6 comparison
    const SpatialGrid gf(-5.0, 5.0, 8001);
    const std::size_t nf = std::size_t(gf.n());
    std::vector<double> a(nf, 2.0), b(nf);
    for (int i = 0; i < gf.n(); ++i)
      b[std::size_t(i)] = 0.3 * std::exp(-sq(gf.node(i)));
    const auto v = gronwall_bound(a, b, gf);
    const auto B = integral_from_right(b, gf);
    for (std::size_t i = 0; i < nf; ++i)
      CHECK(v[i] == Catch::Approx(2.0 * std::exp(B[i])).epsilon(1e-6));
  }

  SECTION("dominates the Picard fixed point of the discrete inequality") {
    std::vector<double> a(n), b(n);
    for (int i = 0; i < g.n(); ++i) {
      const double x = g.node(i);
      a[std::size_t(i)] = 0.5 + 0.4 * std::cos(x);
      b[std::size_t(i)] = 0.35 + 0.15 * std::sin(2.0 * x);
    }
    const auto v = gronwall_bound(a, b, g);
    const auto fp = reference::picard_fixed_point(a, b, g);
    for (std::size_t i = 0; i < n; ++i) CHECK(v[i] >= fp[i]);
  }

  SECTION("negative inputs are rejected") {
    std::vector<double> a(n, 1.0), b(n, 0.1);
    a[3] = -1.0;
    CHECK_THROWS_AS(gronwall_bound(a, b, g), validation_error);
  }
}

TEST_CASE("gronwall envelope certifies the solver remainder") {
  // weighted remainder v(x) = <x_+>^{gamma-1}/<x_-> |m_+ - 1| obeys
  // v <= c2 ||<t>^gamma V||_1 + \int_x c1 <t>^gamma |V| v dt with the
  // weight-quotient suprema c1, c2 taken over grid pairs t >= x.
  const double gamma = 2.0;
  const auto pot = Potential::square_barrier(1.0, 1.0, gamma);
  const SpatialGrid g(-6.0, 6.0, 961);
  double c1 = 0, c2 = 0;
  for (int ix = 0; ix < g.n(); ix += 3) {
    const double x = g.node(ix);
    for (int it = ix; it < g.n(); it += 3) {
      const double t = g.node(it);
      const double common = std::pow(bracket(pos_part(x)), gamma - 1.0) *
                            bracket(t - x) /
                            (bracket(neg_part(x)) * std::pow(bracket(t), gamma));
      c1 = std::max(c1, common * bracket(neg_part(t)) /
                            std::pow(bracket(pos_part(t)), gamma - 1.0));
      c2 = std::max(c2, common);
    }
  }
  const double vnorm = weighted_l1_norm(pot, gamma, g);
  std::vector<double> a(std::size_t(g.n()), c2 * vnorm), b(std::size_t(g.n()));
  for (int i = 0; i < g.n(); ++i)
    b[std::size_t(i)] = c1 * std::pow(bracket(g.node(i)), gamma) *
                        std::abs(pot(g.node(i)));
  const auto envelope = gronwall_bound(a, b, g);
  for (double tau : {0.5, 2.0}) {
    const auto m = solve_jost(pot, g, tau, Side::plus);
    for (int i = 0; i < g.n(); ++i) {
      const double x = g.node(i);
      const double v = std::pow(bracket(pos_part(x)), gamma - 1.0) /
                       bracket(neg_part(x)) * std::abs(m[std::size_t(i)] - 1.0);
      CHECK(v <= envelope[std::size_t(i)]);
    }
  }
}

TEST_CASE("empirical Hoelder seminorm") {
  SECTION("constant samples give zero") {
    std::vector<double> tau;
    std::vector<cplx> s;
    for (int k = 0; k <= 32; ++k) {
      tau.push_back(double(k) / 32.0);
      s.push_back(cplx(3.0, -1.0));
    }
    CHECK(holder_seminorm(s, tau, 0.5) == 0.0);
  }

  SECTION("identity on [0,1] attains 1 at the widest pair") {
    std::vector<double> tau;
    std::vector<cplx> s;
    for (int k = 0; k <= 64; ++k) {
      tau.push_back(double(k) / 64.0);
      s.push_back(cplx(double(k) / 64.0, 0.0));
    }
    CHECK(holder_seminorm(s, tau, 0.5) == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("sqrt singularity approaches 1 from below as the grid refines") {
    auto seminorm_at = [](int nhalf) {
      std::vector<double> tau;
      std::vector<cplx> s;
      for (int k = -nhalf; k <= nhalf; ++k) {
        if (k == 0) continue; // pairs straddle, never hit, the singular point
        const double t = double(k) / double(nhalf);
        tau.push_back(t);
        s.push_back(cplx(std::sqrt(std::abs(t)), 0.0));
      }
      return holder_seminorm(s, tau, 0.5);
    };
    const double coarse = seminorm_at(16);
    const double fine = seminorm_at(64);
    CHECK(coarse < 1.0);
    CHECK(fine < 1.0);
    CHECK(fine > coarse);
    CHECK(fine > 0.85);
  }

  SECTION("input validation") {
    std::vector<double> tau = {0.0};
    std::vector<cplx> s = {cplx(1.0, 0.0)};
    CHECK_THROWS_AS(holder_seminorm(s, tau, 0.5), validation_error);
    tau = {0.0, 0.5};
    s = {cplx(0, 0), cplx(1, 0)};
    CHECK_THROWS_AS(holder_seminorm(s, tau, 1.5), validation_error);
  }
}

TEST_CASE("jost estimate ladder") {
  std::vector<double> taus;
  for (int k = -16; k <= 16; ++k)
    if (k != 0) taus.push_back(double(k) / 4.0);

  SECTION("zero potential: every constant vanishes") {
    const auto reports = verify_jost_estimates(Potential::zero(),
                                               SpatialGrid(-8.0, 8.0, 257), taus,
                                               2.0, 0.5, 33);
    for (const auto &r : reports) CHECK(r.constant == 0.0);
  }

  SECTION("square barrier: finite constants, small refinement drift") {
    const auto reports = verify_jost_estimates(Potential::square_barrier(1.0, 1.0, 2.0),
                                               SpatialGrid(-8.0, 8.0, 641), taus,
                                               2.0, 0.5, 33);
    REQUIRE(reports.size() == 6);
    for (const auto &r : reports) {
      CHECK(std::isfinite(r.constant));
      CHECK(r.constant > 0.0);
      CHECK(r.drift < 0.10);
    }
  }

  SECTION("gaussian with gamma = 3: first-derivative bound holds") {
    const auto reports = verify_jost_estimates(Potential::gaussian(1.0, 1.0, 3.0),
                                               SpatialGrid(-8.0, 8.0, 641), taus,
                                               3.0, 0.5, 33);
    for (const auto &r : reports)
      if (r.id == "m_dtau_weighted") {
        CHECK(std::isfinite(r.constant));
        CHECK(r.constant > 0.0);
      }
  }

  SECTION("sigma outside the admissible window is refused") {
    CHECK_THROWS_AS(verify_jost_estimates(Potential::square_barrier(1.0, 1.0, 1.2),
                                          SpatialGrid(-8.0, 8.0, 257), taus, 1.2,
                                          0.5, 33),
                    hypothesis_error); // sigma > gamma - 1
  }
}
