#include <doctest.h>

#include <cmath>

#include "oufpt/images.hpp"
#include "oufpt/pde.hpp"
#include "oufpt/scales.hpp"
#include "oufpt/transforms.hpp"

using namespace oufpt;

TEST_CASE("fp_residual on exact solutions") {
  const double k = 0.5;
  const Field2D h = transition_field(k);
  SUBCASE("transition density") {
    CHECK(std::abs(fp_residual(h, k, 0.3, 0.7, 1e-3, 1e-3)) < 1e-5);
    CHECK(std::abs(fp_residual(h, k, -0.8, 1.2, 1e-3, 1e-3)) < 1e-5);
  }
  SUBCASE("zero field") {
    Field2D zero;
    zero.eval = [](double, double) { return 0.0; };
    CHECK(fp_residual(zero, k, 0.1, 0.5, 1e-3, 1e-3) == 0.0);
  }
  SUBCASE("heat kernel composed through the BM relation") {
    // h_k(x,t) = e^{kt} h(e^{kt} x, r(t)) with h the heat kernel
    Field2D hk;
    hk.eval = [k](double x, double t) {
      const double u = r_time(k, t), z = std::exp(k * t) * x;
      return std::exp(k * t) * std::exp(-z * z / (2.0 * u)) /
             std::sqrt(2.0 * 3.14159265358979323846 * u);
    };
    CHECK(std::abs(fp_residual(hk, k, 0.4, 0.8, 1e-3, 1e-3)) < 1e-5);
  }
  SUBCASE("margin violation throws") {
    CHECK_THROWS(fp_residual(h, k, 0.0, 1e-4, 1e-3, 1e-3));
  }
  SUBCASE("second order convergence") {
    const double r1 = std::abs(fp_residual(h, k, 0.3, 0.7, 2e-3, 2e-3));
    const double r2 = std::abs(fp_residual(h, k, 0.3, 0.7, 1e-3, 1e-3));
    const double ratio = r1 / r2;
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }
}

TEST_CASE("symmetry images solve the equation") {
  const double k = 0.5;
  const Field2D h = transition_field(k);
  const std::vector<std::pair<double, double>> probes{
      {0.2, 0.6}, {-0.4, 0.9}, {0.5, 1.3}};
  for (int idx = 1; idx <= 6; ++idx) {
    CAPTURE(idx);
    const Field2D img = symmetry_image(h, k, idx, 0.1);
    for (const auto& [x, t] : probes)
      CHECK(std::abs(fp_residual(img, k, x, t, 1e-3, 1e-3)) < 1e-5);
  }
  SUBCASE("eps = 0 is the identity") {
    for (int idx = 1; idx <= 6; ++idx) {
      const Field2D img = symmetry_image(h, k, idx, 0.0);
      CHECK(img(0.3, 0.7) == doctest::Approx(h(0.3, 0.7)).epsilon(1e-13));
    }
  }
  SUBCASE("index 3 with eps = ln 2 doubles the field") {
    const Field2D img = symmetry_image(h, k, 3, std::log(2.0));
    CHECK(img(0.3, 0.7) == doctest::Approx(2.0 * h(0.3, 0.7)).epsilon(1e-13));
  }
  SUBCASE("index 5 domain guard") {
    const Field2D img = symmetry_image(h, k, 5, 10.0);
    CHECK_THROWS(img(0.1, 0.1));  // r(0.1) - 10 < -1/(2k)
  }
}

TEST_CASE("BM limit of symmetries 1..3") {
  const double k = 1e-9;
  Field2D heat;
  heat.eval = [](double x, double t) {
    return std::exp(-x * x / (2.0 * t)) / std::sqrt(2.0 * 3.14159265358979323846 * t);
  };
  const double eps = 0.15;
  const Field2D s1 = symmetry_image(heat, k, 1, eps);
  const Field2D s2 = symmetry_image(heat, k, 2, eps);
  const Field2D s3 = symmetry_image(heat, k, 3, eps);
  for (const double x : {-0.3, 0.4}) {
    for (const double t : {0.5, 1.1}) {
      CHECK(s1(x, t) == doctest::Approx(heat(x - eps, t)).epsilon(1e-6));
      CHECK(s2(x, t) == doctest::Approx(heat(x, t - eps)).epsilon(1e-6));
      CHECK(s3(x, t) == doctest::Approx(std::exp(eps) * heat(x, t)).epsilon(1e-6));
    }
  }
}

TEST_CASE("h_alpha_beta") {
  const double k = 0.5;
  ImageMeasure m;
  m.atoms.push_back({2.0, 1.0});
  m.a = std::exp(1.0);
  Field2D h;
  h.eval = [m, k](double x, double t) { return image_kernel(m, k, x, t); };
  const Boundary f = boundary_from_measure(m, k);

  SUBCASE("alpha=1, beta=0 is the identity") {
    const Field2D img = h_alpha_beta(h, k, 1.0, 0.0);
    CHECK(img(0.2, 0.8) == doctest::Approx(h(0.2, 0.8)).epsilon(1e-11));
  }
  SUBCASE("vanishes on the transformed boundary") {
    const double alpha = 2.0, beta = 0.5;
    const Field2D img = h_alpha_beta(h, k, alpha, beta);
    const Boundary sf = s_transform(f, {alpha, beta, k});
    for (double t : {0.3, 0.8, 1.4})
      CHECK(std::abs(img(sf(t), t)) < 1e-10);
  }
  SUBCASE("solves the equation") {
    const Field2D img = h_alpha_beta(h, k, 2.0, 0.5);
    for (double x : {-0.5, 0.1})
      for (double t : {0.5, 1.0})
        CHECK(std::abs(fp_residual(img, k, x, t, 1e-3, 1e-3)) < 1e-5);
  }
}

TEST_CASE("residual report csv") {
  const Field2D h = transition_field(0.5);
  const std::string csv = residual_report_csv(h, 0.5, {0.1, 0.4}, {0.6, 0.9}, 1e-3, 1e-3);
  CHECK(csv.rfind("x,t,residual\n", 0) == 0);
  std::size_t rows = 0;
  for (char c : csv) rows += c == '\n' ? 1 : 0;
  CHECK(rows == 1 + 4);
}

TEST_CASE("composite symmetry factorization") {
  const double k = 0.5;
  const Field2D h = transition_field(k);
  const std::vector<double> xs{-0.4, 0.2, 0.6};
  const std::vector<double> ts{0.5, 0.9, 1.3};
  SUBCASE("alpha=1, beta=0: all maps are identities") {
    const auto rep = symmetry_composition_check(h, k, 1.0, 0.0, xs, ts);
    REQUIRE(rep.in_domain);
    CHECK(rep.max_abs_diff < 1e-12);
    CHECK(rep.pass);
  }
  SUBCASE("generic parameters") {
    const auto rep = symmetry_composition_check(h, k, 2.0, 0.5, xs, ts);
    REQUIRE(rep.in_domain);
    CHECK(rep.pass);
  }
  SUBCASE("beta = 2 k alpha is out of domain, not a failure") {
    const auto rep = symmetry_composition_check(h, k, 2.0, 2.0 * k * 2.0, xs, ts);
    CHECK_FALSE(rep.in_domain);
  }
}

TEST_CASE("zero set of h_alpha_beta tracks the transformed boundary") {
  const double k = 0.5, alpha = 2.0, beta = 0.5;
  ImageMeasure m;
  m.atoms.push_back({2.0, 1.0});
  m.a = std::exp(1.0);
  Field2D h;
  h.eval = [m, k](double x, double t) { return image_kernel(m, k, x, t); };
  const Boundary f = boundary_from_measure(m, k);
  const Boundary sf = s_transform(f, {alpha, beta, k});
  const Field2D img = h_alpha_beta(h, k, alpha, beta);
  for (double t : {0.4, 0.9}) {
    // the root of img(., t) must sit at sf(t) within 1e-9
    double lo = sf(t) - 0.3, hi = sf(t) + 0.3;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      ((img(mid, t) > 0.0) == (img(lo, t) > 0.0) ? lo : hi) = mid;
    }
    CHECK(std::abs(0.5 * (lo + hi) - sf(t)) < 1e-9);
  }
}
