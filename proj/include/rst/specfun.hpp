#pragma once

#include <cstdint>

// Real-line special functions used by the coefficient formulas: Riemann zeta
// and its derivative, Euler's constant, log-factorials, the super-factorial
// (Barnes G at integers) and the Gillet-Soule R-genus coefficients.
//
// Zeta algorithm: for s >= 0 the Dirichlet eta series is summed with the
// Borwein/Cohen-Villegas-Zagier acceleration and zeta = eta / (1 - 2^(1-s));
// for s < 0 the functional equation maps to 1 - s > 1. Gamma factors use the
// C library lgamma; digamma is computed here (recurrence + asymptotic series).
namespace rst::specfun {

struct PrecisionPolicy {
  double abs_tol = 1e-15;  // target absolute error of accelerated series
  int max_terms = 64;      // hard cap on series length

  void validate() const;
};

double riemann_zeta(double s, const PrecisionPolicy& policy = {});
double zeta_derivative(double s, const PrecisionPolicy& policy = {});

// Euler-Mascheroni constant, computed from eta'(1) (never a literal).
double euler_gamma();

double log_two_pi();

// zeta'(-1), the Glaisher-type constant in beta_1 and the CP^1 formulas.
double zeta_prime_at_minus_one();

// Digamma psi(x) for x not a non-positive integer.
double digamma(double x);

// sin(pi x), exact zeros at integers.
double sin_pi(double x);
double cos_pi(double x);

// log p!, exact cumulative summation for p <= kExactFactorialLimit and the
// Stirling series beyond.
inline constexpr std::int64_t kExactFactorialLimit = 100000;
double log_factorial(std::int64_t p);

// log prod_{i=1}^{p-1} i! (= log G(p+1)); p >= 1.
double log_superfactorial(std::int64_t p);

// Same values carried in long double, for sums whose terms cancel to a
// result many orders of magnitude smaller than the terms themselves.
long double log_factorial_extended(std::int64_t p);
long double log_superfactorial_extended(std::int64_t p);

// Truncated large-p forms:
//   log prod_{i=1}^{p-1} i! ~ p^2/2 log p - 3/4 p^2 + p/2 log 2pi - 1/12 log p + zeta'(-1)
//   log p!                  ~ p log p - p + 1/2 log p + 1/2 log 2pi + 1/(12p)
double log_superfactorial_asymptotic(double p);
double log_factorial_asymptotic(double p);

// Coefficient of z^m/m! in the R-genus series: zero for even m, and
// 2 zeta'(-m) + H_m zeta(-m) for odd m.
double r_genus_coefficient(int m);

}  // namespace rst::specfun
