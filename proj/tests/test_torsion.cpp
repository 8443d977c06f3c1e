#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rst/checks.hpp"
#include "rst/cp1.hpp"
#include "rst/errors.hpp"
#include "rst/specfun.hpp"
#include "rst/torsion.hpp"
#include "support.hpp"

using namespace rst;

namespace {

heat::GeometricData make(int n, int rk, double vol, double c1tm, double c1e) {
  heat::GeometricData g;
  g.n = n;
  g.rk_e = rk;
  g.vol = vol;
  g.int_c1tm = c1tm;
  g.int_c1e = c1e;
  return g;
}

}  // namespace

TEST_CASE("leading coefficients") {
  auto g = make(2, 3, 1.5, 0.0, 0.0);
  g.log_det_integral = 0.4;
  const auto c = torsion::alpha0_beta0(g);
  CHECK(c.alpha == doctest::Approx(4.5));
  CHECK(c.beta == doctest::Approx(0.6));
}

TEST_CASE("CP1 subleading coefficients") {
  const auto c = torsion::alpha1_beta1(cp1::cp1_geometry());
  // Trivial E: alpha1 = 2/3, beta1 = (24 zeta'(-1) + 2 log 2pi + 7) / 12
  CHECK(std::abs(c.alpha - 2.0 / 3.0) < 1e-15);
  const double expected =
      (24.0 * specfun::zeta_prime_at_minus_one() + 2.0 * specfun::log_two_pi() + 7.0) / 12.0;
  CHECK(std::abs(c.beta - expected) < 1e-14);
}

TEST_CASE("twisting by the line bundle shifts the coefficients") {
  testing::Generator gen(31337);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = gen.integer(1, 5);
    const double vol = gen.uniform(0.3, 4.0);
    const double c1tm = gen.uniform(-6.0, 6.0);
    const auto trivial = make(n, 1, vol, c1tm, 0.0);
    const auto twisted = make(n, 1, vol, c1tm, n * vol);  // c1(E) = c1(L) = omega
    const auto a0 = torsion::alpha0_beta0(trivial);
    const auto base = torsion::alpha1_beta1(trivial);
    const auto shifted = torsion::alpha1_beta1(twisted);
    CAPTURE(n);
    CHECK(std::abs((shifted.alpha - base.alpha) - n * a0.alpha) < 1e-12 * std::max(1.0, a0.alpha));
    CHECK(std::abs((shifted.beta - base.beta) - (a0.alpha + n * a0.beta)) < 1e-12 * std::max(1.0, a0.alpha));
  }
}

TEST_CASE("coefficients are additive in the Chern data") {
  testing::Generator gen(99);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = gen.integer(1, 4);
    const int rk = gen.integer(1, 3);
    const auto a = make(n, rk, 1.0, gen.uniform(-4, 4), gen.uniform(-4, 4));
    const auto b = make(n, rk, 1.0, gen.uniform(-4, 4), gen.uniform(-4, 4));
    const auto ab = make(n, rk, 1.0, a.int_c1tm + b.int_c1tm, a.int_c1e + b.int_c1e);
    const auto ca = torsion::alpha1_beta1(a), cb = torsion::alpha1_beta1(b);
    const auto cab = torsion::alpha1_beta1(ab);
    CHECK(std::abs(cab.alpha - ca.alpha - cb.alpha) < 1e-12);
    CHECK(std::abs(cab.beta - ca.beta - cb.beta) < 1e-12);
  }
}

TEST_CASE("Mellin route agrees with the closed coefficients on a fixed-seed grid") {
  const auto grid = checks::random_geometries(checks::kGeometrySeed + 1, 5);
  for (const auto& r : grid) {
    const auto g = make(r.n, r.rk_e, r.vol, r.int_c1tm, r.int_c1e);
    const auto closed = torsion::alpha1_beta1(g);
    const auto m = torsion::alpha1_beta1_via_mellin(g);
    CAPTURE(r.n);
    CAPTURE(r.int_c1tm);
    CAPTURE(r.int_c1e);
    CHECK(std::abs(m.alpha - closed.alpha) < 1e-7);
    CHECK(std::abs(m.beta - closed.beta) < 1e-7);
    CHECK(std::abs(m.beta - closed.beta) <= m.beta_error + 1e-12);
  }
}

TEST_CASE("non-Kaehler normalization is refused") {
  auto g = make(1, 1, 1.0, 2.0, 1.0);
  g.theta_equals_omega = false;
  CHECK_THROWS_AS(torsion::alpha1_beta1(g), DomainError);
  CHECK_THROWS_AS(torsion::alpha1_beta1_via_mellin(g), DomainError);
}

TEST_CASE("expansion table evaluation") {
  const auto g = make(2, 1, 1.0, 3.0, 2.0);
  const auto t = torsion::build_expansion_table(g);
  REQUIRE(t.max_order() == 1);
  const auto c0 = torsion::alpha0_beta0(g), c1 = torsion::alpha1_beta1(g);
  const double p = 50.0;
  const double lp = std::log(p);
  CHECK(std::abs(torsion::expansion_eval(t, 50, 0) - p * p * (c0.alpha * lp + c0.beta)) < 1e-9);
  CHECK(std::abs(torsion::expansion_eval(t, 50, 1) -
                 (p * p * (c0.alpha * lp + c0.beta) + p * (c1.alpha * lp + c1.beta))) < 1e-9);
  CHECK_THROWS_AS(torsion::expansion_eval(t, 1, 1), DomainError);
  CHECK_THROWS_AS(torsion::expansion_eval(t, 10, 2), InputError);
  torsion::ExpansionTable broken{1, {{0, 1.0, 0.0}, {2, 1.0, 0.0}}};
  CHECK_THROWS_AS(broken.validate(), InputError);
}

TEST_CASE("superposition in volume and determinant integral") {
  testing::Generator gen(5150);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(1, 4);
    const int rk = gen.integer(1, 3);
    auto a = make(n, rk, gen.uniform(0.2, 3.0), 0.0, 0.0);
    auto b = make(n, rk, gen.uniform(0.2, 3.0), 0.0, 0.0);
    a.log_det_integral = gen.uniform(-2.0, 2.0);
    b.log_det_integral = gen.uniform(-2.0, 2.0);
    auto ab = make(n, rk, a.vol + b.vol, 0.0, 0.0);
    ab.log_det_integral = a.log_det_integral + b.log_det_integral;
    const auto ca = torsion::alpha0_beta0(a), cb = torsion::alpha0_beta0(b);
    const auto cab = torsion::alpha0_beta0(ab);
    CHECK(std::abs(cab.alpha - ca.alpha - cb.alpha) < 1e-12);
    CHECK(std::abs(cab.beta - ca.beta - cb.beta) < 1e-12);
  }
}

TEST_CASE("leading torsion coefficient is positive") {
  testing::Generator gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = make(gen.integer(1, 6), gen.integer(1, 4), gen.uniform(1e-3, 10.0),
                        gen.uniform(-5, 5), gen.uniform(-5, 5));
    CHECK(torsion::alpha0_beta0(g).alpha > 0.0);
  }
}
