#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oufpt/bridge.hpp"
#include "oufpt/mc.hpp"

using namespace oufpt;

TEST_CASE("bridge moments formulas") {
  const BridgeSpec spec{0.3, -0.2, 1.0, 0.5, 1};
  CHECK(bridge_mean(spec, 0.0) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(bridge_mean(spec, 1.0) == doctest::Approx(-0.2).epsilon(1e-12));
  SUBCASE("k -> 0 covariance is the Brownian bridge") {
    const BridgeSpec flat{0.0, 0.0, 1.0, 1e-11, 1};
    CHECK(bridge_cov(flat, 0.25, 0.5) == doctest::Approx(0.25 * 0.5).epsilon(1e-8));
  }
  SUBCASE("variance vanishes at the pin") {
    CHECK(bridge_cov(spec, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("representations reproduce mean and covariance") {
  for (const double k : {0.5, -0.25}) {
    CAPTURE(k);
    const BridgeSpec spec{0.4, -0.3, 1.0, k, 7};
    SUBCASE("space-time") {
      const auto rep = bridge_moments_check(spec, bridge_sample_st(spec, 0.01, 60000));
      CHECK(rep.pass);
    }
    SUBCASE("anticipative") {
      const auto rep = bridge_moments_check(spec, bridge_sample_av(spec, 0.01, 60000));
      CHECK(rep.pass);
    }
    SUBCASE("integral (Euler + exact tail)") {
      const auto rep = bridge_moments_check(spec, bridge_sample_ir(spec, 0.002, 60000));
      CHECK(rep.pass);
    }
  }
}

TEST_CASE("endpoint pinning") {
  const BridgeSpec spec{0.0, 0.7, 1.0, 0.5, 9};
  for (const auto& ens : {bridge_sample_st(spec, 0.01, 200),
                          bridge_sample_av(spec, 0.01, 200),
                          bridge_sample_ir(spec, 0.005, 200)}) {
    for (const auto& path : ens.values)
      CHECK(path.back() == doctest::Approx(0.7).epsilon(1e-12));
  }
}

TEST_CASE("st and av agree in distribution at T/2") {
  const BridgeSpec s1{0.0, 0.0, 1.0, 0.5, 21};
  const BridgeSpec s2{0.0, 0.0, 1.0, 0.5, 22};
  const auto e1 = bridge_sample_st(s1, 0.01, 30000);
  const auto e2 = bridge_sample_av(s2, 0.01, 30000);
  const std::size_t j = e1.times.size() / 2;
  std::vector<double> a, b;
  for (const auto& p : e1.values) a.push_back(p[j]);
  for (const auto& p : e2.values) b.push_back(p[j]);
  CHECK(ks_statistic(a, b) < ks_critical_value(0.01, a.size(), b.size()));
}

TEST_CASE("ir drift is zero at the origin for a = b = 0") {
  const BridgeSpec spec{0.0, 0.0, 1.0, 0.5, 2};
  // drift(x=0, t=0) = -k coth(kT) * 0 + k b / sinh(kT) = 0
  CHECK(bridge_mean(spec, 0.0) == 0.0);
}

TEST_CASE("bridge transform check") {
  SUBCASE("k = 0.5") {
    const auto rep = bridge_transform_check(1.0, 0.5, 0.01, 60000, 31);
    CHECK(rep.pass);
  }
  SUBCASE("k -> 0 Brownian bridge limit") {
    const auto rep = bridge_transform_check(1.0, 1e-9, 0.01, 40000, 32);
    CHECK(rep.pass);
  }
}

TEST_CASE("ensemble csv stream") {
  const BridgeSpec spec{0.0, 0.0, 1.0, 0.5, 2};
  const auto ens = bridge_sample_st(spec, 0.1, 3);
  std::ostringstream os;
  ensemble_to_csv(os, ens);
  const std::string text = os.str();
  CHECK(text.rfind("path_id,t,value\n", 0) == 0);
  std::size_t rows = 0;
  for (char c : text) rows += (c == '\n') ? 1 : 0;
  CHECK(rows == 1 + ens.values.size() * ens.times.size());
}

TEST_CASE("spec validation") {
  CHECK_THROWS(BridgeSpec{0.0, 0.0, -1.0, 0.5, 1}.validate());
  CHECK_THROWS(BridgeSpec{0.0, 0.0, 3.0, -0.25, 1}.validate());  // zeta = 2 < T
  CHECK_NOTHROW(BridgeSpec{0.0, 0.0, 1.0, -0.25, 1}.validate());
  CHECK_THROWS(bridge_sample_ir(BridgeSpec{0.0, 0.0, 1.0, 0.5, 1}, 0.02, 100));
}
