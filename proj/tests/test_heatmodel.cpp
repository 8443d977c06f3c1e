#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "rst/errors.hpp"
#include "rst/heatmodel.hpp"
#include "rst/quadrature.hpp"
#include "support.hpp"

using namespace rst;
using heat::MomentKind;

namespace {

constexpr double kPi = std::numbers::pi;

struct MomentRef {
  int n;
  double u;
  MomentKind kind;
  bool same_index;
  double value;
};

// Direct Gaussian integration of the Duhamel moments at 40 digits.
const MomentRef kMoments[] = {
    {1, 0.1, MomentKind::UNIT, true, 0.13978380486975303799},
    {1, 0.1, MomentKind::ZJ2, true, 0.0090825276417695208685},
    {1, 0.1, MomentKind::ZI2ZJ2, true, 0.0014111525080351628537},
    {1, 0.5, MomentKind::UNIT, true, 0.50093546829933032205},
    {1, 0.5, MomentKind::ZJ2, true, 0.10929398915216479003},
    {1, 0.5, MomentKind::ZI2ZJ2, true, 0.054003229256587627679},
    {1, 1.3, MomentKind::UNIT, true, 1.3000001045168584365},
    {1, 1.3, MomentKind::ZJ2, true, 0.36314235595102311968},
    {1, 1.3, MomentKind::ZI2ZJ2, true, 0.21505791240884964907},
    {2, 0.1, MomentKind::UNIT, true, 0.19539512103865193137},
    {2, 0.1, MomentKind::ZJ2, true, 0.012695902716012489273},
    {2, 0.1, MomentKind::ZI2ZJ2, true, 0.0019725626682464981038},
    {2, 0.1, MomentKind::ZI2ZJ2, false, 0.00098628133412324905190},
    {2, 0.5, MomentKind::ZI2ZJ2, false, 0.027052132937324819360},
    {2, 1.3, MomentKind::ZJ2, true, 0.36314238514679097293},
    {3, 0.1, MomentKind::UNIT, true, 0.27313073471768698130},
    {3, 0.5, MomentKind::ZJ2, true, 0.10970333597389175826},
    {3, 0.5, MomentKind::ZI2ZJ2, true, 0.054205491525818186873},
    {3, 1.3, MomentKind::ZI2ZJ2, false, 0.10752897349456197103},
};

}  // namespace

TEST_CASE("g-functions: values and small-u data") {
  CHECK(std::abs(heat::g_eval(heat::GFunctionId::G1, 1.0) - 1.0 / std::expm1(2.0 * kPi)) < 1e-18);
  for (auto id : heat::kAllGFunctions) {
    CAPTURE(heat::to_string(id));
    const auto sing = heat::g_small_u_coeffs(id);
    const double u = 1e-3;
    // Remainder after the singular part is O(u).
    CHECK(std::abs(heat::g_eval(id, u) - sing.singular_part(u)) < 10.0 * u);
  }
  CHECK_THROWS_AS(heat::g_mellin_closed(heat::GFunctionId::G1, 1.0), DomainError);
}

TEST_CASE("Duhamel moments: closed forms against frozen references") {
  for (const auto& m : kMoments) {
    CAPTURE(m.n);
    CAPTURE(m.u);
    CAPTURE(heat::to_string(m.kind));
    CAPTURE(m.same_index);
    const double closed = heat::moment_integral_closed(m.n, m.u, m.kind, 0, m.same_index);
    CHECK(std::abs(closed - m.value) < 1e-13 * std::max(1.0, m.value));
    const auto q = heat::moment_integral_quadrature(m.n, m.u, m.kind, m.same_index);
    CHECK(std::abs(q.value - m.value) < 1e-10);
  }
}

TEST_CASE("grading weights multiply the moments") {
  const double base = heat::moment_integral_closed(2, 0.4, MomentKind::ZJ2, 0);
  const double graded = heat::moment_integral_closed(2, 0.4, MomentKind::ZJ2, 3);
  CHECK(std::abs(graded - base * std::exp(-4.0 * kPi * 0.4 * 3)) < 1e-16);
  CHECK_THROWS_AS(heat::grading_weight(0.1, -1), DomainError);
  CHECK_THROWS_AS(heat::moment_integral_closed(1, 0.2, MomentKind::ZI2ZJ2, 0, false), DomainError);
}

TEST_CASE("Mehler kernel semigroup") {
  // int_C K_s(0, z) K_t(z, 0) dz = K_{s+t}(0, 0) for n = 1.
  for (auto [s, t] : {std::pair{0.05, 0.1}, std::pair{0.3, 0.7}, std::pair{1.0, 0.25}}) {
    CAPTURE(s);
    CAPTURE(t);
    auto integrand = [&](double r) {
      return 2.0 * kPi * r * heat::mehler_scalar(1, s, r * r) * heat::mehler_scalar(1, t, r * r);
    };
    const double lhs = quad::adaptive(integrand, 0.0, 12.0, 1e-13).value;
    CHECK(std::abs(lhs - heat::mehler_scalar(1, s + t, 0.0)) < 1e-8);
  }
}

TEST_CASE("supertraces over the exterior algebra") {
  testing::Generator gen(4242);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.integer(1, 8);
    const int rk = gen.integer(1, 4);
    const double a = gen.uniform(0.01, 5.0);
    CAPTURE(n);
    CAPTURE(a);
    CHECK(std::abs(heat::strace_closed(n, rk, a) - heat::strace_bruteforce(n, a, {}, rk)) < 1e-12);
    std::vector<double> diag(n);
    double sum = 0.0;
    for (double& x : diag) sum += (x = gen.uniform(-2.0, 2.0));
    CHECK(std::abs(heat::strace_endo_closed(n, a, sum) - heat::strace_bruteforce(n, a, diag)) <
          1e-12);
  }
  CHECK_THROWS_AS(heat::strace_bruteforce(heat::kBruteforceMaxDim + 1, 1.0), InputError);
}

TEST_CASE("A(u) is the pointwise density with integrated curvature") {
  heat::GeometricData g;
  g.n = 3;
  g.rk_e = 2;
  g.vol = 1.7;
  g.int_c1tm = 2.5;
  g.int_c1e = -0.75;
  const heat::CurvaturePoint pt{3, 2, 2.5, -0.75};
  for (double u : {0.01, 0.3, 2.0}) {
    CHECK(heat::A_of_u(g, u) == heat::strace_N_a1(pt, u));
  }
  // Singular coefficients against extraction from samples.
  const auto sing = heat::A_small_u_coeffs(g);
  const auto ex = mellin::extract_small_u_coefficients([&](double u) { return heat::A_of_u(g, u); },
                                                       -2, 0);
  for (int i = -2; i <= 0; ++i) {
    CAPTURE(i);
    CHECK(std::abs(ex.expansion.coeff(i) - sing.coeff(i)) < 1e-8);
  }
}

TEST_CASE("contracted curvature from Chern data") {
  const auto c = heat::curvature_from_chern({2, 1, 1.0 / (4.0 * kPi), 1.0 / kPi});
  CHECK(std::abs(c.r_scalar - 1.0) < 1e-15);
  CHECK(std::abs(c.sum_R - 0.125) < 1e-15);
  CHECK(std::abs(c.sum_RE - 1.0) < 1e-15);
  CHECK_THROWS_AS(heat::curvature_from_chern({0, 1, 0.0, 0.0}), InputError);
}

TEST_CASE("geometric data validation") {
  heat::GeometricData g;
  g.vol = -1.0;
  CHECK_THROWS_AS(g.validate(), InputError);
  g.vol = 1.0;
  g.int_c1e = NAN;
  CHECK_THROWS_AS(g.validate(), InputError);
}

TEST_CASE("supertrace grid") {
  for (int n = 1; n <= 5; ++n) {
    for (double a : {0.1, 0.7, 2.0}) {
      CAPTURE(n);
      CAPTURE(a);
      CHECK(std::abs(heat::strace_closed(n, 1, a) - heat::strace_bruteforce(n, a)) <= 1e-12);
    }
  }
}

TEST_CASE("moment closed forms against quadrature for n = 1") {
  for (double u : {0.25, 1.0, 4.0}) {
    for (auto kind : {MomentKind::UNIT, MomentKind::ZJ2, MomentKind::ZI2ZJ2}) {
      CAPTURE(u);
      CAPTURE(heat::to_string(kind));
      const double closed = heat::moment_integral_closed(1, u, kind);
      CHECK(std::abs(closed - heat::moment_integral_quadrature(1, u, kind).value) <= 1e-6);
    }
  }
}
