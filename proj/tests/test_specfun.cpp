#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cfloat>
#include <cmath>

#include "rst/errors.hpp"
#include "rst/oracle.hpp"
#include "rst/specfun.hpp"
#include "support.hpp"

using namespace rst;

TEST_CASE("zeta values against high-precision references") {
  CHECK(specfun::riemann_zeta(2.0) == doctest::Approx(1.644934066848226436).epsilon(1e-15));
  CHECK(std::abs(specfun::riemann_zeta(0.5) + 1.460354508809586813) < 1e-14);
  CHECK(std::abs(specfun::riemann_zeta(-2.5) - 0.008516928777850330542) < 1e-15);
  CHECK(std::abs(specfun::riemann_zeta(7.25) - 1.006972209025746699) < 1e-15);
  CHECK(specfun::riemann_zeta(0.0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(specfun::riemann_zeta(-1.0) == doctest::Approx(-1.0 / 12.0).epsilon(1e-14));
  CHECK(std::abs(specfun::riemann_zeta(-2.0)) < 1e-15);
  CHECK_THROWS_AS(specfun::riemann_zeta(1.0), DomainError);
}

TEST_CASE("zeta derivative values") {
  CHECK(std::abs(specfun::zeta_derivative(-1.0) + 0.165421143700450929) < 1e-13);
  CHECK(std::abs(specfun::zeta_derivative(2.0) + 0.937548254315843754) < 1e-13);
  CHECK(std::abs(specfun::zeta_derivative(-3.0) - 0.00537857635777430114) < 1e-13);
  CHECK(std::abs(specfun::zeta_derivative(0.0) + 0.918938533204672742) < 1e-13);
  CHECK(std::abs(specfun::zeta_derivative(0.5) + 3.922646139209151727) < 1e-12);
  CHECK(std::abs(specfun::zeta_derivative(3.5) + 0.113119169608102472) < 1e-13);
  CHECK(std::abs(specfun::zeta_prime_at_minus_one() + 0.165421143700450929) < 1e-15);
}

TEST_CASE("constants") {
  CHECK(std::abs(specfun::euler_gamma() - 0.57721566490153286061) < 1e-15);
  CHECK(std::abs(specfun::log_two_pi() - 1.83787706640934548356) < 1e-15);
}

TEST_CASE("digamma and trigonometric helpers") {
  CHECK(std::abs(specfun::digamma(0.3) + 3.502524222200133125) < 1e-13);
  CHECK(std::abs(specfun::digamma(7.5) - 1.946757484246086788) < 1e-14);
  CHECK_THROWS_AS(specfun::digamma(-2.0), DomainError);
  CHECK(specfun::sin_pi(3.0) == 0.0);
  CHECK(specfun::cos_pi(0.5) == 0.0);
  CHECK(std::abs(specfun::sin_pi(0.25) - std::sqrt(0.5)) <= 2.3e-16);
}

TEST_CASE("independent routes agree") {
  for (double s : {-1.0, 0.25, 2.0, 4.5}) {
    CAPTURE(s);
    CHECK(std::abs(specfun::riemann_zeta(s) - oracle::zeta_euler_maclaurin(s)) < 1e-13);
    CHECK(std::abs(specfun::zeta_derivative(s) - oracle::zeta_derivative_euler_maclaurin(s)) < 1e-11);
  }
  // Further left the Euler-Maclaurin sum loses accuracy; use frozen values.
  CHECK(std::abs(specfun::riemann_zeta(-3.5) - 0.004441011335479430) < 1e-15);
  CHECK(std::abs(specfun::zeta_derivative(-3.5) - 0.009154213629941510) < 1e-13);
  for (int s : {0, -1, -2, -3, -5}) {
    CAPTURE(s);
    CHECK(std::abs(specfun::zeta_derivative(s) - oracle::zeta_derivative_functional_equation(s)) <
          1e-13);
  }
  CHECK(std::abs(oracle::euler_gamma_zeta_limit().value - specfun::euler_gamma()) < 1e-10);
}

TEST_CASE("property: functional equation on a fixed-seed sample") {
  testing::Generator gen(20240611);
  for (int i = 0; i < 200; ++i) {
    const double s = gen.uniform(-6.0, 6.0);
    if (std::abs(s - 1.0) < 1e-3 || std::abs(s) < 1e-3) continue;
    CAPTURE(s);
    CHECK(oracle::functional_equation_residual(s) < 1e-12);
  }
}

TEST_CASE("factorials and superfactorials") {
  CHECK(specfun::log_factorial(0) == 0.0);
  CHECK(std::abs(specfun::log_factorial(20) - std::lgamma(21.0)) < 1e-13);
  // log_superfactorial(p) = log G(p + 1) = log prod_{i<p} i!
  CHECK(specfun::log_superfactorial(1) == 0.0);
  CHECK(std::abs(specfun::log_superfactorial(3) - std::log(2.0)) < 1e-15);
  CHECK(std::abs(specfun::log_superfactorial(10) - 48.96129517882022) < 1e-12);
  CHECK(std::abs(specfun::log_superfactorial_extended(1000) - 2704795.836956850L) < 1e-8L);
  CHECK_THROWS_AS(specfun::log_superfactorial(0), DomainError);
  CHECK_THROWS_AS(specfun::log_factorial(-1), DomainError);
}

TEST_CASE("superfactorial recursion holds in extended precision") {
  for (std::int64_t p = 1; p <= 500; ++p) {
    const long double step =
        specfun::log_superfactorial_extended(p + 1) - specfun::log_superfactorial_extended(p);
    if (std::abs(static_cast<double>(step - specfun::log_factorial_extended(p))) > 1e-12) {
      FAIL("identity broken at p = " << p);
    }
    // The double wrappers are correctly rounded copies of the extended values.
    const double direct = static_cast<double>(specfun::log_superfactorial_extended(p));
    REQUIRE(specfun::log_superfactorial(p) == direct);
  }
  // Beyond the tested range the step stays within a few units in the last place.
  for (std::int64_t p = 501; p <= 20000; p += 37) {
    const long double g = specfun::log_superfactorial_extended(p + 1);
    const long double step = g - specfun::log_superfactorial_extended(p);
    CHECK(std::abs(step - specfun::log_factorial_extended(p)) <= 8.0L * g * LDBL_EPSILON);
  }
}

TEST_CASE("small superfactorials") {
  CHECK(specfun::log_superfactorial(2) == 0.0);
  CHECK(std::abs(specfun::log_superfactorial(4) - std::log(12.0)) < 1e-15);
  CHECK(std::abs(specfun::log_factorial(5) - std::log(120.0)) < 1e-15);
}

TEST_CASE("asymptotic factorial branches match the exact tables") {
  for (std::int64_t p : {std::int64_t{1000}, std::int64_t{20000}, specfun::kExactFactorialLimit}) {
    CAPTURE(p);
    const double x = static_cast<double>(p);
    // The truncated forms drop terms of order 1/p^3 and 1/p^2 respectively.
    const double lf = static_cast<double>(specfun::log_factorial_extended(p));
    const double lg = static_cast<double>(specfun::log_superfactorial_extended(p));
    CHECK(std::abs(specfun::log_factorial_asymptotic(x) - lf) < 4e-16 * lf + 1.0 / (x * x * x));
    CHECK(std::abs(specfun::log_superfactorial_asymptotic(x) - lg) <
          4e-16 * lg + 1.0 / (200.0 * x * x));
  }
  const std::int64_t beyond = specfun::kExactFactorialLimit + 7;
  CHECK(std::isfinite(specfun::log_superfactorial(beyond)));
  CHECK(specfun::log_superfactorial(beyond) > specfun::log_superfactorial(beyond - 1));
}

TEST_CASE("R-genus coefficients") {
  CHECK(std::abs(specfun::r_genus_coefficient(1) + 0.414175620734235192) < 1e-14);
  CHECK(std::abs(specfun::r_genus_coefficient(3) - 0.0260349304933263801) < 1e-15);
  CHECK_THROWS_AS(specfun::r_genus_coefficient(0), DomainError);
}

TEST_CASE("precision policy validation") {
  specfun::PrecisionPolicy bad;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), InputError);
  specfun::PrecisionPolicy short_series;
  short_series.max_terms = 4;
  CHECK_THROWS_AS(short_series.validate(), InputError);
  CHECK_NOTHROW(specfun::PrecisionPolicy{}.validate());
}

TEST_CASE("functional equation residual at the listed points") {
  for (double s : {-0.5, -2.5, -3.5}) {
    CAPTURE(s);
    CHECK(oracle::functional_equation_residual(s) <= 1e-9);
  }
}

TEST_CASE("finite differences agree with the differentiated functional equation") {
  for (int s : {0, -1, -3}) {
    CAPTURE(s);
    const auto fd = oracle::zeta_derivative_finite_difference(s);
    CHECK(std::abs(fd.value - oracle::zeta_derivative_functional_equation(s)) <= 1e-9);
  }
}

TEST_CASE("R-genus formula and even coefficients") {
  CHECK(specfun::r_genus_coefficient(2) == 0.0);
  CHECK(specfun::r_genus_coefficient(4) == 0.0);
  CHECK(std::abs(specfun::r_genus_coefficient(1) -
                 (2.0 * specfun::zeta_prime_at_minus_one() - 1.0 / 12.0)) < 1e-15);
  CHECK(std::abs(specfun::r_genus_coefficient(3) -
                 (2.0 * specfun::zeta_derivative(-3.0) + (1.0 / 120.0) * (1.0 + 0.5 + 1.0 / 3.0))) <
        1e-15);
}

TEST_CASE("Stirling remainder shrinks like 1/p^2") {
  const double p = 1e4;
  const double r = std::abs(specfun::log_factorial(10000) - specfun::log_factorial_asymptotic(p));
  CHECK(r * p * p < 1.0);
  const double q = 2000.0;
  const double g = std::abs(specfun::log_superfactorial(2000) - specfun::log_superfactorial_asymptotic(q));
  CHECK(g * q < 1.0);
}
