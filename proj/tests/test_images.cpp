#include <doctest.h>

#include <cmath>

#include "oufpt/images.hpp"
#include "oufpt/pde.hpp"
#include "oufpt/scales.hpp"
#include "oufpt/transforms.hpp"

using namespace oufpt;

namespace {

ImageMeasure atom_measure(double theta, double weight, double a) {
  ImageMeasure m;
  m.atoms.push_back({theta, weight});
  m.a = a;
  return m;
}

ImageMeasure lebesgue_measure(double a) {
  ImageMeasure m;
  m.cont_density = [](double) { return 1.0 / std::sqrt(2.0 * 3.14159265358979323846); };
  m.a = a;
  return m;
}

double ex83_boundary(double z, double a, double k, double t) {
  return std::log(a) / (2.0 * z) * sinh_over_k(k, t) + z * std::exp(-k * t);
}

}  // namespace

TEST_CASE("l_function values") {
  const ImageMeasure m = atom_measure(2.0, 1.0, 1.0);
  CHECK(l_function(m, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));  // e^{2-2}
  CHECK(l_function(m, 0.0, 1e6) == doctest::Approx(0.0).epsilon(1e-12));
  const ImageMeasure leb = lebesgue_measure(1.0);
  for (double y : {0.0, 0.5, -1.2}) {
    for (double s : {0.5, 1.0, 3.0}) {
      CHECK(l_function(leb, y, s) ==
            doctest::Approx(std::exp(y * y / (2.0 * s)) / std::sqrt(s)).epsilon(1e-10));
    }
  }
}

TEST_CASE("admissibility check") {
  CHECK(check_admissibility(atom_measure(2.0, 1.0, 1.0)).ok);
  CHECK(check_admissibility(lebesgue_measure(1.0)).ok);
}

TEST_CASE("image kernel properties") {
  const double k = 0.5;
  const ImageMeasure m = atom_measure(2.0, 1.0, std::exp(1.0));
  SUBCASE("a -> inf leaves the free density") {
    ImageMeasure big = m;
    big.a = 1e18;
    CHECK(image_kernel(big, k, 0.3, 0.7) ==
          doctest::Approx(transition_density(k, 0.0, 0.3, 0.7)).epsilon(1e-12));
  }
  SUBCASE("vanishes on the implied boundary") {
    const Boundary f = boundary_from_measure(m, k);
    for (double t : {0.3, 0.8, 1.6})
      CHECK(std::abs(image_kernel(m, k, f(t), t)) < 1e-10);
  }
  SUBCASE("decays far below") {
    CHECK(image_kernel(m, k, -30.0, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(image_kernel(m, k, -5.0, 1.0) > 0.0);
  }
}

TEST_CASE("boundary_from_measure matches the atom-family closed form") {
  const double k = 0.5, z = 1.0, a = std::exp(1.0);
  const ImageMeasure m = atom_measure(2.0 * z, 1.0, a);
  const Boundary f = boundary_from_measure(m, k);
  for (double t : {0.1, 0.5, 1.0}) {
    CHECK(std::abs(f(t) - ex83_boundary(z, a, k, t)) < 1e-9);
  }
  CHECK(f(0.0) == doctest::Approx(z).epsilon(1e-12));
}

TEST_CASE("two-sided boundary matches the root-log family") {
  const double k = 1.0, a = 1.0;
  const ImageMeasure m = lebesgue_measure(a);
  const double t_a = images_domain_end(m, k);
  CHECK(t_a == doctest::Approx(s_time(k, a * a)).epsilon(1e-10));
  const auto [fp, fm] = boundary_from_measure_two_sided(m, k);
  for (double t : {0.1, 0.3, 0.5}) {
    const double r = r_time(k, t);
    const double expected =
        std::exp(-k * t) * std::sqrt(r * std::log(a * a / r));
    CHECK(std::abs(fp(t) - expected) < 1e-9);
    CHECK(std::abs(fm(t) + expected) < 1e-9);
  }
  SUBCASE("k<0 with a^2 >= -1/2k never closes") {
    const ImageMeasure m2 = lebesgue_measure(2.0);
    CHECK(std::isinf(images_domain_end(m2, -0.25)));  // -1/2k = 2 <= a^2 = 4
  }
}

TEST_CASE("images density closed forms") {
  SUBCASE("atom case reduces to the hyperbolic-family density") {
    const double k = 0.5, z = 1.0, a = std::exp(1.0);
    const ImageMeasure m = atom_measure(2.0 * z, 1.0, a);
    const Boundary f = boundary_from_measure(m, k);
    for (double t : {0.2, 0.7, 1.4}) {
      const double r = r_time(k, t);
      const double expected = z * std::exp(2.0 * k * t) / std::pow(r, 1.5) *
                              norm_pdf((std::log(a) / (2.0 * z) * r + z) / std::sqrt(r));
      CHECK(images_density(m, k, f, t) == doctest::Approx(expected).epsilon(1e-9));
    }
  }
  SUBCASE("two-sided case: twice the per-boundary flux") {
    const double k = 1.0, a = 1.0;
    const ImageMeasure m = lebesgue_measure(a);
    const auto [fp, fm] = boundary_from_measure_two_sided(m, k);
    for (double t : {0.1, 0.3, 0.5}) {
      const double r = r_time(k, t);
      const double L = std::log(a * a / r);
      // per-boundary flux; the symmetric total doubles it
      const double flux =
          std::exp(2.0 * k * t) / (2.0 * r) * norm_pdf(std::sqrt(L)) * std::sqrt(L);
      CHECK(images_density(m, k, fp, t) ==
            doctest::Approx(2.0 * flux).epsilon(1e-8));
    }
  }
  SUBCASE("two-sided total mass reaches one at the pinch time") {
    const double k = 1.0, a = 1.0;
    const ImageMeasure m = lebesgue_measure(a);
    const auto [fp, fm] = boundary_from_measure_two_sided(m, k);
    const double ta = fp.domain_end();
    // substitute t = v^2: the density carries an integrable 1/sqrt(t)
    // divergence at 0 that a plain midpoint rule resolves poorly
    double mass = 0.0;
    const int n = 4000;
    const double vhi = std::sqrt(ta);
    for (int i = 0; i < n; ++i) {
      const double v = vhi * (i + 0.5) / n;
      mass += images_density(m, k, fp, v * v) * 2.0 * v * vhi / n;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(2e-3));
  }
  SUBCASE("mass below one") {
    const double k = 0.5;
    const ImageMeasure m = atom_measure(2.0, 1.0, std::exp(1.0));
    const Boundary f = boundary_from_measure(m, k);
    double mass = 0.0;
    const int n = 3000;
    const double hi = 8.0, dt = hi / n;
    for (int i = 1; i <= n; ++i) mass += images_density(m, k, f, i * dt - dt / 2) * dt;
    CHECK(mass <= 1.0 + 1e-6);
    CHECK(mass > 0.3);
  }
}

TEST_CASE("density equals the kernel flux at the boundary") {
  const double k = 0.5;
  const ImageMeasure m = atom_measure(2.0, 1.0, std::exp(1.0));
  const Boundary f = boundary_from_measure(m, k);
  for (double t : {0.4, 0.9}) {
    const double x = f(t);
    const double h = 1e-5;
    const double flux = -(image_kernel(m, k, x + h, t) - image_kernel(m, k, x - h, t)) /
                        (4.0 * h);  // -(1/2) dh/dx
    CHECK(images_density(m, k, f, t) ==
          doctest::Approx(flux).epsilon(1e-6));
  }
}

TEST_CASE("kernel satisfies the forward equation") {
  const double k = 0.5;
  const ImageMeasure m = atom_measure(2.0, 1.0, std::exp(1.0));
  Field2D h;
  h.eval = [m, k](double x, double t) { return image_kernel(m, k, x, t); };
  for (double x : {-1.0, 0.2, 0.8})
    for (double t : {0.4, 0.9, 1.5})
      CHECK(std::abs(fp_residual(h, k, x, t, 1e-3, 1e-3)) < 1e-5);
}

TEST_CASE("transformed measure") {
  const double k = 0.5, z = 1.0, a = std::exp(1.0);
  const ImageMeasure m = atom_measure(2.0 * z, 1.0, a);
  SUBCASE("beta = 0 leaves weights") {
    const ImageMeasure m2 = transformed_measure(m, 2.0, 0.0);
    CHECK(m2.atoms[0].weight == doctest::Approx(1.0));
  }
  SUBCASE("atom reweighting") {
    const ImageMeasure m2 = transformed_measure(m, 2.0, 1.0);
    CHECK(m2.atoms[0].weight ==
          doctest::Approx(std::exp(-0.5 * (1.0 / 2.0) * 4.0)).epsilon(1e-13));
  }
  SUBCASE("implied boundary equals s_transform") {
    const double alpha = 2.0, beta = 0.7;
    const ImageMeasure mt = scaled_measure(transformed_measure(m, alpha, beta),
                                           1.0 / alpha);
    const Boundary implied = boundary_from_measure(mt, k);
    const Boundary f = boundary_from_measure(m, k);
    const Boundary sf = s_transform(f, {alpha, beta, k});
    for (double t : {0.2, 0.6, 1.1})
      CHECK(std::abs(implied(t) - sf(t)) < 1e-8);
  }
}

TEST_CASE("boundary shape checks") {
  const double k = 0.5;
  SUBCASE("atom-family boundary passes") {
    const ImageMeasure m = atom_measure(2.0, 1.0, std::exp(1.0));
    const Boundary f = boundary_from_measure(m, k);
    const auto rep = boundary_shape_check(f, k, {0.2, 0.5, 0.9, 1.4, 2.0});
    CHECK(rep.monotone_ok);
    CHECK(rep.concavity_ok);
  }
  SUBCASE("root-log upper boundary passes") {
    const ImageMeasure m = lebesgue_measure(1.0);
    const auto [fp, fm] = boundary_from_measure_two_sided(m, 1.0);
    const double ta = fp.domain_end();
    const auto rep = boundary_shape_check(fp, 1.0, {0.15 * ta, 0.4 * ta, 0.6 * ta, 0.8 * ta});
    CHECK(rep.monotone_ok);
    CHECK(rep.concavity_ok);
  }
  SUBCASE("e^{2kt} violates concavity") {
    const Boundary bad = Boundary::from_function(
        [k](double t) { return std::exp(2.0 * k * t); },
        std::numeric_limits<double>::infinity(),
        [k](double t) { return 2.0 * k * std::exp(2.0 * k * t); }, 1);
    const auto rep = boundary_shape_check(bad, k, {0.3, 0.8, 1.5});
    CHECK_FALSE(rep.concavity_ok);
  }
}

TEST_CASE("measure json round trip") {
  ImageMeasure m = atom_measure(2.0, 1.0, std::exp(1.0));
  const std::string js = m.to_json();
  const ImageMeasure back = ImageMeasure::from_json(js);
  CHECK(back.atoms.size() == 1);
  CHECK(back.atoms[0].theta == doctest::Approx(2.0));
  CHECK(back.a == doctest::Approx(std::exp(1.0)));
  const ImageMeasure leb = ImageMeasure::from_json(
      R"({"cont": {"kind": "lebesgue-scaled", "coeff": 0.3989422804014327}, "a": 1.0})");
  CHECK(leb.two_sided());
  CHECK(leb.cont_density(0.0) == doctest::Approx(0.3989422804014327));
  CHECK_THROWS(ImageMeasure::from_json(R"({"a": -1.0})"));
}
