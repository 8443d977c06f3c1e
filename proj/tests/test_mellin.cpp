#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rst/errors.hpp"
#include "rst/heatmodel.hpp"
#include "rst/mellin.hpp"
#include "support.hpp"

using namespace rst;
using heat::GFunctionId;

namespace {

// High-precision regularized M'(0) of each g-function (quadrature at 400 digits).
double reference_derivative(GFunctionId id) {
  switch (id) {
    case GFunctionId::G1: return 0.0;
    case GFunctionId::G2: return -0.01226472149967213892;
    case GFunctionId::G2_TILDE: return -0.07957747154594766788;
    case GFunctionId::G3_TILDE: return -0.04642019173513613960;
  }
  return NAN;
}

}  // namespace

TEST_CASE("regularized derivative of the g-functions") {
  for (GFunctionId id : heat::kAllGFunctions) {
    CAPTURE(heat::to_string(id));
    const auto r = mellin::mellin_derivative_at_zero(
        [id](double u) { return heat::g_eval(id, u); }, heat::g_small_u_coeffs(id),
        heat::g_decay_bound(id));
    CHECK(std::abs(r.derivative_at_zero - reference_derivative(id)) < 1e-9);
    CHECK(std::abs(heat::g_mellin_closed_derivative_at_zero(id) - reference_derivative(id)) < 1e-14);
    CHECK(r.error_estimate < 1e-8);
    CHECK(r.value_at_zero == heat::g_small_u_coeffs(id).coeff(0));
  }
}

TEST_CASE("closed Mellin transforms match direct quadrature in the convergent strip") {
  // For z > 2 every transform converges without regularization; the closed
  // forms are normalized by 1 / Gamma(z).
  const double z = 3.5;
  for (GFunctionId id : heat::kAllGFunctions) {
    CAPTURE(heat::to_string(id));
    double total = 0.0;
    double a = 0.0;
    for (double b = 1.0 / 64.0; b <= 64.0; b *= 2.0) {
      total += quad::adaptive([&](double u) { return heat::g_eval(id, u) * std::pow(u, z - 1.0); },
                              a, b, 1e-14)
                   .value;
      a = b;
    }
    CHECK(std::abs(total / std::tgamma(z) - heat::g_mellin_closed(id, z)) < 1e-12);
  }
}

TEST_CASE("exponentials: the zeta function of e^{-au} is a^{-z}") {
  for (double a : {0.5, 1.0, 3.0}) {
    CAPTURE(a);
    auto f = [a](double u) { return std::exp(-a * u); };
    const auto sing = mellin::SingularExpansion::from_map({{0, 1.0}});
    const auto r = mellin::mellin_derivative_at_zero(f, sing, {a, 1.0, 1.0});
    CHECK(std::abs(r.derivative_at_zero + std::log(a)) < 1e-10);
    CHECK(mellin::mellin_at_zero(f, sing) == 1.0);
  }
}

TEST_CASE("a simple pole: e^{-u}/u gives 1/(z - 1)") {
  auto f = [](double u) { return std::exp(-u) / u; };
  const auto sing = mellin::SingularExpansion::from_map({{-1, 1.0}, {0, -1.0}});
  const auto r = mellin::mellin_derivative_at_zero(f, sing, {1.0, 1.0, 1.0});
  CHECK(r.value_at_zero == -1.0);
  CHECK(std::abs(r.derivative_at_zero + 1.0) < 1e-10);
}

TEST_CASE("extraction recovers a known expansion") {
  const std::map<int, double> truth = {{-2, 2.0}, {-1, -3.0}, {0, 0.5}, {1, 0.25}};
  auto f = [](double u) { return 2.0 / (u * u) - 3.0 / u + 0.5 + 0.25 * u - u * u; };
  const auto ex = mellin::extract_small_u_coefficients(f, -2, 1);
  REQUIRE(ex.highest_order == 1);
  for (const auto& [order, value] : truth) {
    CAPTURE(order);
    CHECK(std::abs(ex.expansion.coeff(order) - value) < 1e-6);
    CHECK(std::abs(ex.expansion.coeff(order) - value) <= ex.errors.at(order) + 1e-13);
  }
}

TEST_CASE("extraction reduces the order when the problem is ill-conditioned") {
  mellin::ExtractionOptions opts;
  opts.condition_limit = 1e3;
  const auto ex = mellin::extract_small_u_coefficients(
      [](double u) { return heat::g_eval(GFunctionId::G2, u); }, -2, 4, opts);
  CHECK(ex.highest_order < 4);
  CHECK_FALSE(ex.note.empty());
}

TEST_CASE("singular expansion validation") {
  CHECK_THROWS_AS(mellin::SingularExpansion::from_map({{-2, 1.0}, {0, 1.0}}), InputError);
  CHECK_THROWS_AS(mellin::SingularExpansion::from_map({{1, 1.0}}), InputError);
  const auto s = mellin::SingularExpansion::from_map({{-1, 2.0}, {0, 1.0}});
  CHECK(s.coeff(-4) == 0.0);
  CHECK_THROWS_AS(s.coeff(3), InputError);
  CHECK(std::abs(s.singular_part(0.5) - 5.0) < 1e-15);
}

TEST_CASE("mismatched singular data is rejected") {
  const auto wrong = mellin::SingularExpansion::from_map({{-1, 1.0}, {0, 0.0}});
  CHECK_THROWS_AS(mellin::mellin_derivative_at_zero(
                      [](double u) { return heat::g_eval(GFunctionId::G2, u); }, wrong,
                      heat::g_decay_bound(GFunctionId::G2)),
                  PreconditionError);
}

TEST_CASE("determinant from zeta data") {
  CHECK(std::abs(mellin::regularized_det_from_zeta(0.0, -std::log(3.0)) - 3.0) < 1e-14);
  CHECK_THROWS_AS(mellin::regularized_det_from_zeta(NAN, 0.0), InputError);
}

TEST_CASE("decay fit bounds the function on and beyond the window") {
  auto f = [](double u) { return 3.0 * std::exp(-2.0 * u); };
  const auto b = mellin::fit_decay_bound(f, 1.0, 8.0);
  for (double u = 1.0; u < 20.0; u += 0.37) {
    CAPTURE(u);
    CHECK(std::abs(f(u)) <= b.scale * std::exp(-b.rate * u) * (1.0 + 1e-12));
  }
  CHECK_THROWS_AS(mellin::fit_decay_bound([](double) { return 1.0; }, 1.0, 8.0), PreconditionError);
}

TEST_CASE("property: linear combinations of g-functions") {
  testing::Generator gen(77);
  for (int trial = 0; trial < 12; ++trial) {
    double c[4];
    for (double& x : c) x = gen.uniform(-5.0, 5.0);
    auto f = [&](double u) {
      double s = 0.0;
      for (int i = 0; i < 4; ++i) s += c[i] * heat::g_eval(heat::kAllGFunctions[i], u);
      return s;
    };
    std::map<int, double> coeffs;
    double expected = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (const auto& [order, v] : heat::g_small_u_coeffs(heat::kAllGFunctions[i]).coeffs) {
        coeffs[order] += c[i] * v;
      }
      expected += c[i] * heat::g_mellin_closed_derivative_at_zero(heat::kAllGFunctions[i]);
    }
    const auto r = mellin::mellin_derivative_at_zero(f, mellin::SingularExpansion::from_map(coeffs),
                                                     {mellin::DecayBound{3.1, 20.0, 1.0}});
    CAPTURE(trial);
    CHECK(std::abs(r.derivative_at_zero - expected) < 1e-8);
  }
}

TEST_CASE("linearity on the pair (g1, g2)") {
  using heat::g_eval;
  const auto s1 = heat::g_small_u_coeffs(GFunctionId::G1);
  const auto s2 = heat::g_small_u_coeffs(GFunctionId::G2);
  const auto d = heat::g_decay_bound(GFunctionId::G1);
  const auto r1 = mellin::mellin_derivative_at_zero(
      [](double u) { return g_eval(GFunctionId::G1, u); }, s1, d);
  const auto r2 = mellin::mellin_derivative_at_zero(
      [](double u) { return g_eval(GFunctionId::G2, u); }, s2, d);
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{2.5, -0.75}, std::pair{-3.0, 0.125}}) {
    std::map<int, double> c;
    for (const auto& [i, v] : s1.coeffs) c[i] += a * v;
    for (const auto& [i, v] : s2.coeffs) c[i] += b * v;
    const auto r = mellin::mellin_derivative_at_zero(
        [=](double u) { return a * g_eval(GFunctionId::G1, u) + b * g_eval(GFunctionId::G2, u); },
        mellin::SingularExpansion::from_map(c), {d.rate, std::abs(a) + std::abs(b), d.onset});
    const double expected = a * r1.derivative_at_zero + b * r2.derivative_at_zero;
    const double budget =
        r.error_estimate + std::abs(a) * r1.error_estimate + std::abs(b) * r2.error_estimate;
    CAPTURE(a);
    CAPTURE(b);
    CHECK(std::abs(r.derivative_at_zero - expected) <= budget);
  }
}

TEST_CASE("scale covariance") {
  // For f_c(u) = f(cu) with a pure power-law singular part the value at zero is
  // unchanged and the derivative shifts by -log(c) times it.
  for (double c : {0.5, 2.0, 3.0}) {
    std::map<int, double> scaled;
    for (const auto& [i, v] : heat::g_small_u_coeffs(GFunctionId::G2).coeffs) {
      scaled[i] = v * std::pow(c, i);
    }
    const auto sing = mellin::SingularExpansion::from_map(scaled);
    auto f = [c](double u) { return heat::g_eval(GFunctionId::G2, c * u); };
    CAPTURE(c);
    CHECK(mellin::mellin_at_zero(f, sing) == heat::g_small_u_coeffs(GFunctionId::G2).coeff(0));
    const auto r = mellin::mellin_derivative_at_zero(f, sing, {3.0 * c, 1.0, 1.0});
    const double expected = reference_derivative(GFunctionId::G2) + std::log(c) / 12.0;
    CHECK(std::abs(r.derivative_at_zero - expected) < 1e-8);
  }
}

TEST_CASE("extracted small-u coefficients of the g-functions") {
  for (GFunctionId id : heat::kAllGFunctions) {
    const auto sing = heat::g_small_u_coeffs(id);
    const auto ex = mellin::extract_small_u_coefficients(
        [id](double u) { return heat::g_eval(id, u); }, sing.lowest_order, 0);
    for (const auto& [i, v] : sing.coeffs) {
      CAPTURE(heat::to_string(id));
      CAPTURE(i);
      CHECK(std::abs(ex.expansion.coeff(i) - v) <= 1e-6);
    }
  }
}
