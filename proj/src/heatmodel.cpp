#include "rst/heatmodel.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "rst/errors.hpp"
#include "rst/specfun.hpp"

namespace rst::heat {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_time(double u, const char* where) {
  if (!(u > 0.0)) throw DomainError(std::string(where) + ": requires u > 0");
}

void require_dimension(int n, const char* where) {
  if (n < 1) throw InputError(std::string(where) + ": requires n >= 1");
}

// 2 pi r^{2m+1} exp(-beta r^2) integrated over r in [0, sqrt(60 / beta)].
quad::Estimate radial_moment(int m, double beta, double tol) {
  const double reach = std::sqrt(60.0 / beta);
  auto integrand = [m, beta](double r) {
    return 2.0 * kPi * std::pow(r, 2 * m + 1) * std::exp(-beta * r * r);
  };
  return quad::adaptive(integrand, 0.0, reach, tol, 30);
}

}  // namespace

std::string to_string(GFunctionId id) {
  switch (id) {
    case GFunctionId::G1: return "g1";
    case GFunctionId::G2: return "g2";
    case GFunctionId::G2_TILDE: return "g2_tilde";
    case GFunctionId::G3_TILDE: return "g3_tilde";
  }
  return "?";
}

std::string to_string(MomentKind kind) {
  switch (kind) {
    case MomentKind::UNIT: return "unit";
    case MomentKind::ZJ2: return "zj2";
    case MomentKind::ZI2ZJ2: return "zi2zj2";
  }
  return "?";
}

double g_eval(GFunctionId id, double u) {
  require_positive_time(u, "g_eval");
  const double x = 2.0 * kPi * u;
  const double e = std::exp(-x);
  const double d = -std::expm1(-x);  // 1 - e^-x without cancellation
  switch (id) {
    case GFunctionId::G1: return e / d;
    case GFunctionId::G2: return e / (d * d);
    case GFunctionId::G2_TILDE: return u * e / (d * d);
    case GFunctionId::G3_TILDE: return u * e / (d * d * d);
  }
  return 0.0;
}

mellin::SingularExpansion g_small_u_coeffs(GFunctionId id) {
  const double pi2 = kPi * kPi;
  switch (id) {
    case GFunctionId::G1:
      return mellin::SingularExpansion::from_map({{-1, 1.0 / (2.0 * kPi)}, {0, -0.5}});
    case GFunctionId::G2:
      return mellin::SingularExpansion::from_map(
          {{-2, 1.0 / (4.0 * pi2)}, {-1, 0.0}, {0, -1.0 / 12.0}});
    case GFunctionId::G2_TILDE:
      return mellin::SingularExpansion::from_map({{-1, 1.0 / (4.0 * pi2)}, {0, 0.0}});
    case GFunctionId::G3_TILDE:
      return mellin::SingularExpansion::from_map(
          {{-2, 1.0 / (8.0 * pi2 * kPi)}, {-1, 1.0 / (8.0 * pi2)}, {0, 0.0}});
  }
  throw InputError("g_small_u_coeffs: unknown id");
}

double g_mellin_closed(GFunctionId id, double z) {
  const double two_pi = 2.0 * kPi;
  auto zeta = [&](double s) {
    if (s == 1.0) {
      throw DomainError("g_mellin_closed(" + to_string(id) + "): pole at z = " + std::to_string(z));
    }
    return specfun::riemann_zeta(s);
  };
  switch (id) {
    case GFunctionId::G1: return std::pow(two_pi, -z) * zeta(z);
    case GFunctionId::G2: return std::pow(two_pi, -z) * zeta(z - 1.0);
    case GFunctionId::G2_TILDE: return z * std::pow(two_pi, -(z + 1.0)) * zeta(z);
    case GFunctionId::G3_TILDE:
      return z * std::pow(two_pi, -(z + 1.0)) * 0.5 * (zeta(z - 1.0) + zeta(z));
  }
  return 0.0;
}

double g_mellin_closed_derivative_at_zero(GFunctionId id) {
  using specfun::riemann_zeta;
  using specfun::zeta_derivative;
  const double log2pi = specfun::log_two_pi();
  switch (id) {
    // d/dz (2pi)^-z zeta(z + c) = -log(2pi) zeta(c) + zeta'(c) at z = 0
    case GFunctionId::G1: return -log2pi * riemann_zeta(0.0) + zeta_derivative(0.0);
    case GFunctionId::G2: return -log2pi * riemann_zeta(-1.0) + zeta_derivative(-1.0);
    // d/dz z h(z) = h(0)
    case GFunctionId::G2_TILDE: return riemann_zeta(0.0) / (2.0 * kPi);
    case GFunctionId::G3_TILDE:
      return 0.5 * (riemann_zeta(-1.0) + riemann_zeta(0.0)) / (2.0 * kPi);
  }
  return 0.0;
}

mellin::DecayBound g_decay_bound(GFunctionId) {
  // For u >= 1 every g is at most u e^{-2pi u} / (1 - e^{-2pi})^3 < e^{-pi u}.
  return {kPi, 1.0, 1.0};
}

MehlerParams mehler_params(int n, double u) {
  require_dimension(n, "mehler_params");
  require_positive_time(u, "mehler_params");
  MehlerParams p;
  p.u = u;
  p.n = n;
  p.B_u = kPi / (2.0 * std::tanh(kPi * u));
  p.C_u = std::pow(-std::expm1(-2.0 * kPi * u), -n);
  return p;
}

double mehler_scalar(int n, double u, double r2) {
  if (r2 < 0.0) throw DomainError("mehler_scalar: requires |Z|^2 >= 0");
  const MehlerParams p = mehler_params(n, 2.0 * u);
  return p.C_u * std::exp(-p.B_u * r2);
}

double grading_weight(double u, int j) {
  if (j < 0) throw DomainError("grading_weight: negative degree");
  return std::exp(-4.0 * kPi * u * j);
}

double rescaled_exponent(double u) { return 2.0 * kPi * u; }

double moment_integral_closed(int n, double u, MomentKind kind, int degree, bool same_index) {
  require_dimension(n, "moment_integral_closed");
  require_positive_time(u, "moment_integral_closed");
  const double e = std::exp(-4.0 * kPi * u);
  const double d = -std::expm1(-4.0 * kPi * u);
  const double w = grading_weight(u, degree);
  switch (kind) {
    case MomentKind::UNIT: return w * u / std::pow(d, n);
    case MomentKind::ZJ2:
      return w / (kPi * std::pow(d, n + 1)) * (u + u * e - d / (2.0 * kPi));
    case MomentKind::ZI2ZJ2: {
      if (!same_index && n < 2) {
        throw DomainError("moment_integral_closed: i != j needs n >= 2");
      }
      const double factor = same_index ? 2.0 : 1.0;
      const double one_minus_e2 = -std::expm1(-8.0 * kPi * u);
      return w * factor / (kPi * kPi * std::pow(d, n + 2)) *
             (u * (1.0 + 4.0 * e + e * e) - 3.0 * one_minus_e2 / (4.0 * kPi));
    }
  }
  return 0.0;
}

quad::Estimate moment_integral_quadrature(int n, double u, MomentKind kind, bool same_index,
                                          double abs_tol) {
  require_dimension(n, "moment_integral_quadrature");
  require_positive_time(u, "moment_integral_quadrature");
  if (n > 4) throw InputError("moment_integral_quadrature: oracle limited to n <= 4");
  if (kind == MomentKind::ZI2ZJ2 && !same_index && n < 2) {
    throw DomainError("moment_integral_quadrature: i != j needs n >= 2");
  }
  // Radial moment order in each complex plane.
  std::vector<int> plane_order(n, 0);
  if (kind == MomentKind::ZJ2) plane_order[0] = 1;
  if (kind == MomentKind::ZI2ZJ2) {
    if (same_index) {
      plane_order[0] = 2;
    } else {
      plane_order[0] = 1;
      plane_order[1] = 1;
    }
  }

  double radial_rel_error = 0.0;
  auto inner = [&](double v) {
    const MehlerParams left = mehler_params(n, 2.0 * v);
    const MehlerParams right = mehler_params(n, 2.0 * (u - v));
    const double beta = left.B_u + right.B_u;
    double value = left.C_u * right.C_u;
    for (int m : plane_order) {
      const double scale = std::pow(beta, -(m + 1));  // natural size of the moment
      const quad::Estimate r = radial_moment(m, beta, 1e-15 * scale);
      value *= r.value;
      radial_rel_error = std::max(radial_rel_error, r.error / std::abs(r.value));
    }
    return value;
  };

  quad::Estimate total;
  for (const auto& [a, b] : {std::pair{0.0, 0.5 * u}, std::pair{0.5 * u, u}}) {
    const quad::Estimate e = quad::adaptive(inner, a, b, 0.5 * abs_tol, 30);
    total.value += e.value;
    total.error += e.error;
    total.evaluations += e.evaluations;
  }
  total.error += n * radial_rel_error * std::abs(total.value);
  return total;
}

double strace_closed(int n, int rk_e, double a) {
  require_dimension(n, "strace_closed");
  const double e = std::exp(-a);
  const double d = -std::expm1(-a);
  return -static_cast<double>(rk_e) * n * e * std::pow(d, n - 1);
}

double strace_endo_closed(int n, double a, double diag_sum) {
  require_dimension(n, "strace_endo_closed");
  const double e = std::exp(-a);
  if (n == 1) return -diag_sum * e;  // (1 - e)(1 - e)^{-1} = 1 by continuity
  const double d = -std::expm1(-a);
  return -diag_sum * e * (1.0 - n * e) * std::pow(d, n - 2);
}

double strace_bruteforce(int n, double a, const std::vector<double>& endo_diagonal, int rk_e) {
  require_dimension(n, "strace_bruteforce");
  if (n > kBruteforceMaxDim) {
    throw InputError("strace_bruteforce: n = " + std::to_string(n) + " exceeds the limit " +
                     std::to_string(kBruteforceMaxDim));
  }
  if (!endo_diagonal.empty() && static_cast<int>(endo_diagonal.size()) != n) {
    throw InputError("strace_bruteforce: endo diagonal must have n entries");
  }
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int grade = std::popcount(mask);
    double weight = rk_e;
    if (!endo_diagonal.empty()) {
      weight = 0.0;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) weight += endo_diagonal[i];
      }
    }
    const double sign = (grade % 2 == 0) ? 1.0 : -1.0;
    total += sign * grade * std::exp(-a * grade) * weight;
  }
  return total;
}

void CurvaturePoint::validate() const {
  if (n < 1) throw InputError("CurvaturePoint: n must be >= 1");
  if (rk_e < 1) throw InputError("CurvaturePoint: rk_e must be >= 1");
}

ContractedCurvature curvature_from_chern(const CurvaturePoint& point) {
  point.validate();
  ContractedCurvature c;
  c.r_scalar = 4.0 * kPi * point.lam_c1tm;
  c.sum_R = c.r_scalar / 8.0;
  c.sum_RE = kPi * point.lam_c1e;
  return c;
}

double strace_N_a1(const CurvaturePoint& point, double u) {
  point.validate();
  const double n = point.n;
  const double g1 = g_eval(GFunctionId::G1, u);
  const double g2 = g_eval(GFunctionId::G2, u);
  const double g2t = g_eval(GFunctionId::G2_TILDE, u);
  const double g3t = g_eval(GFunctionId::G3_TILDE, u);
  return -point.rk_e * point.lam_c1tm * (g2 + 0.5 * n * g1 - 2.0 * kPi * g3t) -
         point.lam_c1e * (n * g1 - 2.0 * kPi * g2t);
}

void GeometricData::validate() const {
  if (n < 1) throw InputError("GeometricData: n must be >= 1");
  if (rk_e < 1) throw InputError("GeometricData: rk_e must be >= 1");
  if (!(vol > 0.0) || !std::isfinite(vol)) throw InputError("GeometricData: vol must be > 0");
  if (!std::isfinite(int_c1tm) || !std::isfinite(int_c1e) || !std::isfinite(log_det_integral)) {
    throw InputError("GeometricData: non-finite integral");
  }
}

double A_of_u(const GeometricData& geom, double u) {
  // The integrated density is the pointwise one with Lambda-contractions
  // replaced by their integrals.
  CurvaturePoint integrated;
  integrated.n = geom.n;
  integrated.rk_e = geom.rk_e;
  integrated.lam_c1tm = geom.int_c1tm;
  integrated.lam_c1e = geom.int_c1e;
  return strace_N_a1(integrated, u);
}

mellin::SingularExpansion A_small_u_coeffs(const GeometricData& geom) {
  const double n = geom.n;
  const double tm = -geom.rk_e * geom.int_c1tm;
  const double ce = -geom.int_c1e;
  const auto g1 = g_small_u_coeffs(GFunctionId::G1);
  const auto g2 = g_small_u_coeffs(GFunctionId::G2);
  const auto g2t = g_small_u_coeffs(GFunctionId::G2_TILDE);
  const auto g3t = g_small_u_coeffs(GFunctionId::G3_TILDE);
  std::map<int, double> c;
  for (int i = -2; i <= 0; ++i) {
    c[i] = tm * (g2.coeff(i) + 0.5 * n * g1.coeff(i) - 2.0 * kPi * g3t.coeff(i)) +
           ce * (n * g1.coeff(i) - 2.0 * kPi * g2t.coeff(i));
  }
  return mellin::SingularExpansion::from_map(c);
}

double A_term_scale(const GeometricData& geom, double u) {
  const double n = geom.n;
  const double tm = std::abs(geom.rk_e * geom.int_c1tm);
  const double ce = std::abs(geom.int_c1e);
  const double g1 = g_eval(GFunctionId::G1, u);
  const double g2 = g_eval(GFunctionId::G2, u);
  const double g2t = g_eval(GFunctionId::G2_TILDE, u);
  const double g3t = g_eval(GFunctionId::G3_TILDE, u);
  return tm * (g2 + 0.5 * n * g1 + 2.0 * kPi * g3t) + ce * (n * g1 + 2.0 * kPi * g2t);
}

mellin::DecayBound A_decay_bound(const GeometricData& geom) {
  const double n = geom.n;
  const double scale = std::abs(geom.rk_e * geom.int_c1tm) * (1.0 + 0.5 * n + 2.0 * kPi) +
                       std::abs(geom.int_c1e) * (n + 2.0 * kPi);
  return {kPi, std::max(scale, std::numeric_limits<double>::min()), 1.0};
}

}  // namespace rst::heat
