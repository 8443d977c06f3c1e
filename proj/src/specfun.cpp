#include "rst/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "rst/errors.hpp"
#include "rst/summation.hpp"

namespace rst::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

struct EtaValue {
  double eta = 0.0;
  double eta_prime = 0.0;
};

int borwein_terms(const PrecisionPolicy& policy) {
  // Error of the n-term acceleration is bounded by 3 / (3 + sqrt 8)^n.
  const double rate = std::log(3.0 + std::sqrt(8.0));
  int n = static_cast<int>(std::ceil(std::log(3.0 / policy.abs_tol) / rate)) + 8;
  if (n < 16) n = 16;
  if (n > policy.max_terms) n = policy.max_terms;
  return n;
}

// eta(s) = sum (-1)^(k-1) k^-s and its s-derivative, accelerated.
EtaValue dirichlet_eta(double s, const PrecisionPolicy& policy) {
  const int n = borwein_terms(policy);
  std::vector<double> d(n + 1);
  double term = 1.0;
  double acc = 1.0;
  d[0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    term *= (n + i - 1) * 4.0 * (n - i + 1) / ((2.0 * i) * (2.0 * i - 1.0));
    acc += term;
    d[i] = acc;
  }
  CompensatedSum<double> value;
  CompensatedSum<double> slope;
  for (int k = 0; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double log_k = std::log(k + 1.0);
    const double power = std::exp(-s * log_k);
    const double weight = sign * (d[k] - d[n]);
    value += weight * power;
    slope += -weight * power * log_k;
  }
  return {-value.value() / d[n], -slope.value() / d[n]};
}

void check_pole(double s) {
  if (s == 1.0) throw DomainError("riemann zeta: pole at s = 1");
}

// zeta on s >= 0 (s != 1) together with its derivative.
std::pair<double, double> zeta_right(double s, const PrecisionPolicy& policy) {
  const EtaValue eta = dirichlet_eta(s, policy);
  const double denom = -std::expm1((1.0 - s) * kLn2);  // 1 - 2^(1-s)
  const double denom_prime = std::exp((1.0 - s) * kLn2) * kLn2;
  const double zeta = eta.eta / denom;
  const double zeta_prime = (eta.eta_prime - zeta * denom_prime) / denom;
  return {zeta, zeta_prime};
}

// 2^s pi^(s-1) Gamma(1-s) for s < 0, in log form to avoid overflow.
double functional_equation_scale(double s) {
  return std::exp(s * kLn2 + (s - 1.0) * std::log(kPi) + std::lgamma(1.0 - s));
}

const std::vector<long double>& log_factorial_table() {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(kExactFactorialLimit + 1);
    CompensatedSum<long double> acc;
    t[0] = 0.0L;
    for (std::int64_t k = 1; k <= kExactFactorialLimit; ++k) {
      acc += std::log(static_cast<long double>(k));
      t[k] = acc.value();
    }
    return t;
  }();
  return table;
}

// log_superfactorial_table()[p] = log prod_{i=1}^{p-1} i!
const std::vector<long double>& log_superfactorial_table() {
  static const std::vector<long double> table = [] {
    const auto& lf = log_factorial_table();
    std::vector<long double> t(kExactFactorialLimit + 2);
    CompensatedSum<long double> acc;
    t[0] = 0.0L;
    t[1] = 0.0L;
    for (std::int64_t p = 2; p <= kExactFactorialLimit + 1; ++p) {
      acc += lf[p - 1];
      t[p] = acc.value();
    }
    return t;
  }();
  return table;
}

}  // namespace

void PrecisionPolicy::validate() const {
  if (!(abs_tol > 0.0)) throw InputError("PrecisionPolicy: abs_tol must be > 0");
  if (max_terms < 16) throw InputError("PrecisionPolicy: max_terms must be >= 16");
}

double sin_pi(double x) {
  double r = std::fmod(x, 2.0);  // (-2, 2)
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r > 0.5) return std::sin(kPi * (1.0 - r));
  if (r < -0.5) return -std::sin(kPi * (1.0 + r));
  return std::sin(kPi * r);
}

double cos_pi(double x) { return sin_pi(x + 0.5); }

double riemann_zeta(double s, const PrecisionPolicy& policy) {
  policy.validate();
  check_pole(s);
  if (s >= 0.0) return zeta_right(s, policy).first;
  const double reflected = zeta_right(1.0 - s, policy).first;
  return functional_equation_scale(s) * sin_pi(0.5 * s) * reflected;
}

double zeta_derivative(double s, const PrecisionPolicy& policy) {
  policy.validate();
  check_pole(s);
  if (s >= 0.0) return zeta_right(s, policy).second;
  const auto [z, z_prime] = zeta_right(1.0 - s, policy);
  const double scale = functional_equation_scale(s);
  const double sin_term = sin_pi(0.5 * s);
  const double chi = scale * sin_term;
  const double chi_prime =
      scale * (sin_term * (log_two_pi() - digamma(1.0 - s)) + 0.5 * kPi * cos_pi(0.5 * s));
  return chi_prime * z - chi * z_prime;
}

double euler_gamma() {
  // eta'(1) = gamma ln 2 - (ln 2)^2 / 2
  static const double value = [] {
    const EtaValue eta = dirichlet_eta(1.0, PrecisionPolicy{});
    return eta.eta_prime / kLn2 + 0.5 * kLn2;
  }();
  return value;
}

double log_two_pi() { return std::log(2.0 * kPi); }

double zeta_prime_at_minus_one() {
  static const double value = zeta_derivative(-1.0);
  return value;
}

double digamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) {
    throw DomainError("digamma: pole at non-positive integer " + std::to_string(x));
  }
  if (x < 0.0) {
    // psi(1 - x) - psi(x) = pi cot(pi x)
    return digamma(1.0 - x) - kPi * cos_pi(x) / sin_pi(x);
  }
  double shift = 0.0;
  while (x < 20.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  const double series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
  return shift + std::log(x) - 0.5 / x - series;
}

long double log_factorial_extended(std::int64_t p) {
  if (p < 0) throw DomainError("log_factorial: negative argument");
  if (p <= kExactFactorialLimit) return log_factorial_table()[static_cast<std::size_t>(p)];
  const long double x = static_cast<long double>(p);
  const long double inv = 1.0L / x;
  const long double inv2 = inv * inv;
  return x * std::log(x) - x + 0.5L * std::log(x) + 0.5L * std::log(2.0L * std::numbers::pi_v<long double>) +
         inv * (1.0L / 12.0L - inv2 * (1.0L / 360.0L - inv2 / 1260.0L));
}

long double log_superfactorial_extended(std::int64_t p) {
  if (p < 1) throw DomainError("log_superfactorial: requires p >= 1");
  if (p <= kExactFactorialLimit + 1) return log_superfactorial_table()[static_cast<std::size_t>(p)];
  // log G(p + 1) with the next two Bernoulli corrections.
  const long double x = static_cast<long double>(p);
  const long double lx = std::log(x);
  const long double inv2 = 1.0L / (x * x);
  return 0.5L * x * x * lx - 0.75L * x * x +
         0.5L * std::log(2.0L * std::numbers::pi_v<long double>) * x - lx / 12.0L +
         zeta_prime_at_minus_one() - inv2 / 240.0L + inv2 * inv2 / 1008.0L;
}

double log_factorial(std::int64_t p) { return static_cast<double>(log_factorial_extended(p)); }

double log_superfactorial(std::int64_t p) {
  return static_cast<double>(log_superfactorial_extended(p));
}

double log_superfactorial_asymptotic(double p) {
  if (!(p > 0.0)) throw DomainError("log_superfactorial_asymptotic: requires p > 0");
  const double lp = std::log(p);
  return 0.5 * p * p * lp - 0.75 * p * p + 0.5 * log_two_pi() * p - lp / 12.0 +
         zeta_prime_at_minus_one();
}

double log_factorial_asymptotic(double p) {
  if (!(p > 0.0)) throw DomainError("log_factorial_asymptotic: requires p > 0");
  const double lp = std::log(p);
  return p * lp - p + 0.5 * lp + 0.5 * log_two_pi() + 1.0 / (12.0 * p);
}

double r_genus_coefficient(int m) {
  if (m < 1) throw DomainError("r_genus_coefficient: requires m >= 1");
  if (m % 2 == 0) return 0.0;
  double harmonic = 0.0;
  for (int j = 1; j <= m; ++j) harmonic += 1.0 / j;
  const double s = -static_cast<double>(m);
  return 2.0 * zeta_derivative(s) + harmonic * riemann_zeta(s);
}

}  // namespace rst::specfun
