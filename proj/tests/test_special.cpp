#include <doctest.h>

#include <cmath>

#include "oufpt/airy.hpp"
#include "oufpt/density.hpp"
#include "oufpt/mc.hpp"
#include "oufpt/special.hpp"

using namespace oufpt;

TEST_CASE("airy values") {
  CHECK(airy(0.0).ai == doctest::Approx(0.355028053887817239).epsilon(1e-14));
  CHECK(airy(0.0).ai_prime == doctest::Approx(-0.258819403792806798).epsilon(1e-14));
  // spot values across the branches
  CHECK(airy(2.0).ai == doctest::Approx(0.0349241304232743791).epsilon(1e-12));
  CHECK(airy(2.0).ai_prime == doctest::Approx(-0.0530903844336536317).epsilon(1e-12));
  CHECK(airy(4.5).ai == doctest::Approx(0.000330250323514308984).epsilon(1e-11));
  CHECK(airy(9.5).ai == doctest::Approx(5.33026370461749163e-10).epsilon(1e-9));
  CHECK(std::abs(airy(-8.5).ai - -0.330290237630208879) < 1e-12);
  CHECK(std::abs(airy(-30.0).ai - -0.0879681884568421628) < 1e-12);
  CHECK(std::abs(airy(-59.5).ai - -0.182593027314755547) < 1e-12);
  CHECK(std::abs(airy(-59.5).ai_prime - -0.687483324746870554) < 1e-11);
  CHECK_THROWS(airy(10.5));
  CHECK_THROWS(airy(-61.0));
}

TEST_CASE("airy decay on the positive axis") {
  double prev = airy(2.0).ai;
  for (double x = 2.5; x <= 10.0; x += 0.5) {
    const double cur = airy(x).ai;
    CHECK(cur > 0.0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("airy zeros") {
  const auto z = airy_zeros(10);
  CHECK(z.size() == 10);
  CHECK(z[0] == doctest::Approx(-2.33810741045976704).epsilon(1e-12));
  CHECK(z[1] == doctest::Approx(-4.08794944413097062).epsilon(1e-12));
  for (std::size_t j = 0; j + 1 < z.size(); ++j) CHECK(z[j + 1] < z[j]);
  for (const double zero : z) CHECK(std::abs(airy(zero).ai) < 1e-12);
  const auto z50 = airy_zeros(50);
  CHECK(z50[49] == doctest::Approx(-38.0210086772552544).epsilon(1e-10));
  CHECK_THROWS(airy_zeros(51));
}

TEST_CASE("parabola BM density against MC") {
  const auto p = AirySeriesParams::make(1.0, 1.0, 50);
  MCConfig cfg;
  cfg.n_paths = 120000;
  cfg.dt = 5e-4;
  cfg.horizon = 2.5;
  cfg.bins = 25;
  const DensityGrid g =
      fpt_sample(OUParams{0.0, 404}, parabola_boundary_bm(1.0, 1.0), cfg);
  std::size_t ok = 0, counted = 0;
  for (std::size_t j = 0; j < g.density.size(); ++j) {
    const double tc = 0.5 * (g.t_edges[j] + g.t_edges[j + 1]);
    if (tc < 0.8) continue;  // 50 zeros reach the 1e-14 target from here
    const auto v = parabola_bm_density(p, tc);
    if (!v.converged) continue;
    ++counted;
    if (std::abs(g.density[j] - v.value) <= std::max(g.half_width[j], 1e-3)) ++ok;
  }
  REQUIRE(counted >= 15);
  CHECK(static_cast<double>(ok) / counted >= 0.95);
}

TEST_CASE("parabola mass below one") {
  const auto p = AirySeriesParams::make(1.0, 1.0, 50);
  double mass = 0.0;
  const int n = 2000;
  const double lo = 0.8, hi = 4.5, dt = (hi - lo) / n;
  for (int i = 0; i < n; ++i) {
    const auto v = parabola_bm_density(p, lo + (i + 0.5) * dt);
    REQUIRE(v.converged);
    CHECK(v.value >= 0.0);
    mass += v.value * dt;
  }
  // mass up to the truncation point is below total probability
  CHECK(mass <= 1.0 + 1e-4);
}

TEST_CASE("parabola scaling law") {
  const auto p1 = AirySeriesParams::make(1.3, 0.7, 50);
  const auto p2 = AirySeriesParams::make(1.0, 0.7 * std::pow(1.3, 3.0), 50);
  for (double t : {0.9, 1.6}) {
    const double lhs = parabola_bm_density(p1, t).value;
    const double rhs = parabola_bm_density(p2, t / (1.3 * 1.3)).value / (1.3 * 1.3);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("series truncation stability") {
  const auto p20 = AirySeriesParams::make(1.0, 1.0, 20);
  const auto p40 = AirySeriesParams::make(1.0, 1.0, 40);
  for (double t : {1.0, 1.5, 2.5})
    CHECK(std::abs(parabola_bm_density(p20, t).value -
                   parabola_bm_density(p40, t).value) < 1e-12);
  // small-t: truncation flag raised instead of a silently wrong value
  CHECK_FALSE(parabola_bm_density(AirySeriesParams::make(1.0, 1.0, 10), 0.05).converged);
}

TEST_CASE("parabola OU density routes") {
  const auto p = AirySeriesParams::make(1.0, 1.0, 50);
  const double k = 0.5;
  SUBCASE("k -> 0 recovers BM") {
    for (double t : {0.8, 1.4})
      CHECK(parabola_ou_density(p, 1e-12, t).value ==
            doctest::Approx(parabola_bm_density(p, t).value).epsilon(1e-9));
  }
  SUBCASE("equals timechange of the BM density") {
    const DensityFn bm = DensityFn::closed_form(
        [&](double u) { return parabola_bm_density(p, u).value; },
        std::numeric_limits<double>::infinity());
    const DensityFn ou = timechange_density(bm, k);
    for (double t : {0.5, 0.9}) {
      REQUIRE(ou(t).has_value());
      CHECK(parabola_ou_density(p, k, t).value ==
            doctest::Approx(*ou(t)).epsilon(1e-12));
    }
  }
  SUBCASE("matches OU MC on the boundary e^{-kt}(a + b r^2)") {
    MCConfig cfg;
    cfg.n_paths = 100000;
    cfg.dt = 5e-4;
    cfg.horizon = 1.5;
    cfg.bins = 15;
    const DensityGrid g =
        fpt_sample(OUParams{k, 505}, parabola_boundary_ou(1.0, 1.0, k), cfg);
    std::size_t ok = 0, counted = 0;
    for (std::size_t j = 0; j < g.density.size(); ++j) {
      const double tc = 0.5 * (g.t_edges[j] + g.t_edges[j + 1]);
      const auto v = parabola_ou_density(p, k, tc);
      if (!v.converged || tc < 0.8) continue;
      ++counted;
      if (std::abs(g.density[j] - v.value) <= std::max(g.half_width[j], 1.5e-3)) ++ok;
    }
    REQUIRE(counted >= 6);
    CHECK(static_cast<double>(ok) / counted >= 0.95);
  }
}

TEST_CASE("parabola transformed density equals the transform route") {
  const auto p = AirySeriesParams::make(1.0, 1.0, 50);
  const double k = 0.5;
  const TransformParams tp{2.0, 1.0, k};
  const DensityFn ou = DensityFn::closed_form(
      [&](double t) { return parabola_ou_density(p, k, t).value; },
      std::numeric_limits<double>::infinity());
  const DensityFn route = transform_density(ou, parabola_boundary_ou(1.0, 1.0, k), tp);
  SUBCASE("alpha=1, beta=0 reduces to the OU density") {
    for (double t : {0.5, 1.0})
      CHECK(parabola_transformed_density(p, {1.0, 0.0, k}, t).value ==
            doctest::Approx(parabola_ou_density(p, k, t).value).epsilon(1e-12));
  }
  SUBCASE("route equality at 1e-10") {
    for (double t : {0.4, 0.7, 1.0}) {
      const auto v = route(t);
      REQUIRE(v.has_value());
      CHECK(parabola_transformed_density(p, tp, t).value ==
            doctest::Approx(*v).epsilon(1e-10));
    }
  }
}

TEST_CASE("hyperbolic family") {
  const double k = 0.5;
  SUBCASE("A=0 gives z e^{-kt}") {
    const Boundary f = hyperbolic_family(0.0, 1.0, k);
    CHECK(f(1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-13));
  }
  SUBCASE("k -> 0 limit is A + B") {
    const Boundary f = hyperbolic_family(0.4, 0.6, 1e-14);
    CHECK(f(2.0) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("closed under the S transform") {
    const Boundary f = hyperbolic_family(0.3, 1.0, k);
    const Boundary sf = s_transform(f, {2.0, 1.0, k});
    std::vector<double> probes{0.1, 0.4, 0.8, 1.2, 1.7};
    const HyperbolicFit fit = fit_hyperbolic(sf, k, probes);
    CHECK(fit.residual < 1e-9);
  }
}
