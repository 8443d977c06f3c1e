#include "rst/cp1.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "rst/errors.hpp"
#include "rst/specfun.hpp"
#include "rst/summation.hpp"

namespace rst::cp1 {

namespace {

using ld = long double;

const ld kLog2Pi = std::log(2.0L * std::numbers::pi_v<ld>);

void require_p(std::int64_t p, std::int64_t min, const char* where) {
  if (p < min) {
    throw DomainError(std::string(where) + ": requires p >= " + std::to_string(min));
  }
}

ld zeta_prime_m1() { return static_cast<ld>(specfun::zeta_prime_at_minus_one()); }

// 2 sum_{j=1}^p (p-j) log(j+1) - (p+1) log (p+1)! folded into one sum: the
// factorial is sum_{j=1}^p log(j+1), so the coefficient of log(j+1) is
// p - 2j - 1. Folding first keeps the cancellation inside one compensated sum.
ld torsion_sum(std::int64_t p) {
  CompensatedSum<ld> acc;
  for (std::int64_t j = 1; j <= p; ++j) {
    acc += static_cast<ld>(p - 2 * j - 1) * std::log(static_cast<ld>(j + 1));
  }
  return acc.value();
}

ld exact_2logT(std::int64_t p) {
  const ld x = static_cast<ld>(p);
  return torsion_sum(p) - 4.0L * zeta_prime_m1() + 0.5L * (x + 1.0L) * (x + 1.0L) -
         0.5L * kLog2Pi * x - 2.0L / 3.0L * kLog2Pi;
}

ld asymptotic(std::int64_t p) {
  const ld x = static_cast<ld>(p);
  const ld lp = std::log(x);
  return -0.5L * x * lp - 2.0L / 3.0L * lp - kLog2Pi / 6.0L - 7.0L / 12.0L -
         2.0L * zeta_prime_m1();
}

ld covolume(std::int64_t p) {
  return 2.0L * specfun::log_superfactorial_extended(p + 1) -
         static_cast<ld>(p + 1) * specfun::log_factorial_extended(p + 1);
}

ld covolume_asym(std::int64_t p) {
  const ld x = static_cast<ld>(p);
  const ld lp = std::log(x);
  return -0.5L * x * x - 0.5L * x * lp + (0.5L * kLog2Pi - 1.0L) * x - 2.0L / 3.0L * lp +
         2.0L * zeta_prime_m1() + 0.5L * kLog2Pi - 13.0L / 12.0L;
}

ld arithmetic_rhs(std::int64_t p) {
  const ld x = static_cast<ld>(p);
  return 0.5L * (x + 1.0L) * (x + 1.0L) - 4.0L * zeta_prime_m1() - 0.5L * kLog2Pi * x -
         2.0L / 3.0L * kLog2Pi;
}

template <typename F>
RichardsonResult extrapolate(std::int64_t p0, int levels, F&& value) {
  if (p0 < 2 || levels < 2 || levels > 20) {
    throw InputError("extrapolate: need p0 >= 2 and 2 <= levels <= 20");
  }
  std::vector<double> samples;
  for (int k = 0; k < levels; ++k) samples.push_back(static_cast<double>(value(p0 << k)));
  // Corrections are a power series in 1/p; doubling p halves h = 1/p.
  return richardson_limit(samples, 2.0, 1, 1);
}

}  // namespace

double cp1_exact_2logT(std::int64_t p) {
  require_p(p, 1, "cp1_exact_2logT");
  return static_cast<double>(exact_2logT(p));
}

double cp1_asymptotic(std::int64_t p) {
  require_p(p, 2, "cp1_asymptotic");
  return static_cast<double>(asymptotic(p));
}

double cp1_residual(std::int64_t p) {
  require_p(p, 2, "cp1_residual");
  return static_cast<double>(exact_2logT(p) - asymptotic(p));
}

double cp1_covolume(std::int64_t p) {
  require_p(p, 1, "cp1_covolume");
  return static_cast<double>(covolume(p));
}

double cp1_covolume_from_norms(std::int64_t p) {
  require_p(p, 1, "cp1_covolume_from_norms");
  const ld lf_total = specfun::log_factorial_extended(p + 1);
  CompensatedSum<ld> acc;
  for (std::int64_t j = 0; j <= p; ++j) {
    acc += specfun::log_factorial_extended(j) + specfun::log_factorial_extended(p - j) - lf_total;
  }
  return static_cast<double>(acc.value());
}

double covolume_asymptotic(std::int64_t p) {
  require_p(p, 2, "covolume_asymptotic");
  return static_cast<double>(covolume_asym(p));
}

double covolume_residual(std::int64_t p) {
  require_p(p, 2, "covolume_residual");
  return static_cast<double>(covolume(p) - covolume_asym(p));
}

ArithmeticDegree arithmetic_degree_check(std::int64_t p) {
  require_p(p, 1, "arithmetic_degree_check");
  return {static_cast<double>(exact_2logT(p) - covolume(p)),
          static_cast<double>(arithmetic_rhs(p))};
}

Cp1Report cp1_report(std::int64_t p) {
  require_p(p, 1, "cp1_report");
  Cp1Report r;
  r.p = p;
  const ld t = exact_2logT(p);
  const ld c = covolume(p);
  r.two_log_T = static_cast<double>(t);
  r.covolume = static_cast<double>(c);
  if (p >= 2) {
    const ld a = asymptotic(p);
    r.asymptotic_prediction = static_cast<double>(a);
    r.residual = static_cast<double>(t - a);
  } else {
    r.asymptotic_prediction = std::numeric_limits<double>::quiet_NaN();
    r.residual = std::numeric_limits<double>::quiet_NaN();
  }
  r.arithmetic_degree = static_cast<double>(t - c);
  r.arithmetic_degree_closed = static_cast<double>(arithmetic_rhs(p));
  return r;
}

heat::GeometricData cp1_geometry() {
  heat::GeometricData g;
  g.n = 1;
  g.rk_e = 1;
  g.vol = 1.0;
  g.int_c1tm = 2.0;
  g.int_c1e = 0.0;
  g.log_det_integral = 0.0;
  g.theta_equals_omega = true;
  return g;
}

RichardsonResult extrapolate_torsion_constant(std::int64_t p0, int levels) {
  return extrapolate(p0, levels, [](std::int64_t p) {
    const ld x = static_cast<ld>(p);
    const ld lp = std::log(x);
    return exact_2logT(p) + 0.5L * x * lp + 2.0L / 3.0L * lp;
  });
}

RichardsonResult extrapolate_covolume_constant(std::int64_t p0, int levels) {
  return extrapolate(p0, levels, [](std::int64_t p) {
    const ld x = static_cast<ld>(p);
    const ld lp = std::log(x);
    return covolume(p) -
           (-0.5L * x * x - 0.5L * x * lp + (0.5L * kLog2Pi - 1.0L) * x - 2.0L / 3.0L * lp);
  });
}

double torsion_constant() {
  return -specfun::log_two_pi() / 6.0 - 7.0 / 12.0 - 2.0 * specfun::zeta_prime_at_minus_one();
}

double covolume_constant() {
  return 2.0 * specfun::zeta_prime_at_minus_one() + 0.5 * specfun::log_two_pi() - 13.0 / 12.0;
}

}  // namespace rst::cp1
