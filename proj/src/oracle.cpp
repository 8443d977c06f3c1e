#include "rst/oracle.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "rst/errors.hpp"
#include "rst/specfun.hpp"
#include "rst/summation.hpp"

namespace rst::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// B_2, B_4, ..., B_20
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,     -1.0 / 30.0,     1.0 / 42.0,     -1.0 / 30.0,  5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0};

// Rising product s (s+1) ... (s+m-1) and its s-derivative.
std::pair<double, double> rising(double s, int m) {
  double value = 1.0;
  double slope = 0.0;
  for (int i = 0; i < m; ++i) {
    slope = slope * (s + i) + value;
    value *= (s + i);
  }
  return {value, slope};
}

}  // namespace

double zeta_euler_maclaurin(double s, int N) {
  if (s == 1.0) throw DomainError("zeta_euler_maclaurin: pole");
  CompensatedSum<double> acc;
  for (int k = N - 1; k >= 1; --k) acc += std::pow(k, -s);
  const double x = N;
  acc += std::pow(x, 1.0 - s) / (s - 1.0);
  acc += 0.5 * std::pow(x, -s);
  double factorial = 1.0;
  for (int j = 1; j <= static_cast<int>(kBernoulli.size()); ++j) {
    factorial *= (2.0 * j - 1.0) * (2.0 * j);
    const auto [poly, unused] = rising(s, 2 * j - 1);
    (void)unused;
    acc += kBernoulli[j - 1] / factorial * poly * std::pow(x, -s - 2.0 * j + 1.0);
  }
  return acc.value();
}

double zeta_derivative_euler_maclaurin(double s, int N) {
  if (s == 1.0) throw DomainError("zeta_derivative_euler_maclaurin: pole");
  CompensatedSum<double> acc;
  for (int k = N - 1; k >= 2; --k) acc += -std::log(k) * std::pow(k, -s);
  const double x = N;
  const double lx = std::log(x);
  const double head = std::pow(x, 1.0 - s);
  acc += -lx * head / (s - 1.0) - head / ((s - 1.0) * (s - 1.0));
  acc += -0.5 * lx * std::pow(x, -s);
  double factorial = 1.0;
  for (int j = 1; j <= static_cast<int>(kBernoulli.size()); ++j) {
    factorial *= (2.0 * j - 1.0) * (2.0 * j);
    const auto [poly, dpoly] = rising(s, 2 * j - 1);
    const double power = std::pow(x, -s - 2.0 * j + 1.0);
    acc += kBernoulli[j - 1] / factorial * (dpoly - lx * poly) * power;
  }
  return acc.value();
}

RichardsonResult zeta_derivative_finite_difference(double s, double h0, int levels) {
  std::vector<double> d;
  for (int k = 0; k < levels; ++k) {
    const double h = std::ldexp(h0, -k);
    d.push_back((specfun::riemann_zeta(s + h) - specfun::riemann_zeta(s - h)) / (2.0 * h));
  }
  return richardson_limit(d, 2.0, 2, 2);
}

double zeta_derivative_functional_equation(int s) {
  if (s > 0) throw InputError("zeta_derivative_functional_equation: s must be 0 or negative");
  const double log2pi = std::log(2.0 * kPi);
  const double gamma = euler_gamma_harmonic();
  if (s == 0) {
    // zeta(s) = chi(s) zeta(1-s) with chi(s) = s/2 (1 + s(log 2pi + gamma)) + O(s^3)
    // and zeta(1-s) = -1/s + gamma + O(s).
    return 0.5 * gamma - 0.5 * (log2pi + gamma);
  }
  const int m = -s;  // 1 - s = m + 1
  double harmonic = 0.0;
  for (int i = 1; i <= m; ++i) harmonic += 1.0 / i;
  const double psi = -gamma + harmonic;  // psi(m + 1)
  double gamma_fn = 1.0;                 // Gamma(m + 1) = m!
  for (int i = 2; i <= m; ++i) gamma_fn *= i;
  const double sd = static_cast<double>(s);
  const double scale = std::pow(2.0, sd) * std::pow(kPi, sd - 1.0) * gamma_fn;
  // sin(pi s / 2), cos(pi s / 2) at integers, exactly.
  const int quarter = ((s % 4) + 4) % 4;
  const double sin_v = (quarter == 1) ? 1.0 : (quarter == 3) ? -1.0 : 0.0;
  const double cos_v = (quarter == 0) ? 1.0 : (quarter == 2) ? -1.0 : 0.0;
  const double chi = scale * sin_v;
  const double chi_prime = scale * (sin_v * (log2pi - psi) + 0.5 * kPi * cos_v);
  const double z = zeta_euler_maclaurin(1.0 - sd);
  const double z_prime = zeta_derivative_euler_maclaurin(1.0 - sd);
  return chi_prime * z - chi * z_prime;
}

double euler_gamma_harmonic(int N) {
  CompensatedSum<double> h;
  for (int k = N; k >= 1; --k) h += 1.0 / k;
  const double x = N;
  const double inv2 = 1.0 / (x * x);
  h += -std::log(x) - 0.5 / x;
  double power = 1.0;
  for (int k = 1; k <= 4; ++k) {
    power *= inv2;
    h += kBernoulli[k - 1] / (2.0 * k) * power;
  }
  return h.value();
}

RichardsonResult euler_gamma_zeta_limit(double h0, int levels) {
  std::vector<double> g;
  for (int k = 0; k < levels; ++k) {
    const double h = std::ldexp(h0, -k);
    const double right = specfun::riemann_zeta(1.0 + h) - 1.0 / h;
    const double left = specfun::riemann_zeta(1.0 - h) + 1.0 / h;
    g.push_back(0.5 * (right + left));
  }
  return richardson_limit(g, 2.0, 2, 2);
}

double functional_equation_residual(double s) {
  const double chi = std::pow(2.0, s) * std::pow(kPi, s - 1.0) * specfun::sin_pi(0.5 * s) *
                     std::tgamma(1.0 - s);
  return specfun::riemann_zeta(s) - chi * specfun::riemann_zeta(1.0 - s);
}

}  // namespace rst::oracle
