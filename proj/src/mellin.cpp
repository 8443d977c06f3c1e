#include "rst/mellin.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "rst/errors.hpp"
#include "rst/quadrature.hpp"
#include "rst/richardson.hpp"
#include "rst/specfun.hpp"

namespace rst::mellin {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Size of the terms that cancel in f - singular part; rounding error of the
// residual is roughly eps times this.
double cancellation_scale(const SingularExpansion& sing, double u) {
  double s = 0.0;
  for (const auto& [order, c] : sing.coeffs) {
    if (order > 0) break;
    s += std::abs(c) * std::pow(u, order);
  }
  return s;
}

// Integral over [0, width] of the polynomial interpolating (nodes[i], values[i]),
// i < count, by 4-point Gauss-Legendre (exact up to degree 7).
double interpolant_integral(const std::array<double, 4>& nodes, const std::array<double, 4>& values,
                            int count, double width) {
  constexpr std::array<double, 4> x = {-0.861136311594052575, -0.339981043584856265,
                                       0.339981043584856265, 0.861136311594052575};
  constexpr std::array<double, 4> w = {0.347854845137453857, 0.652145154862546143,
                                       0.652145154862546143, 0.347854845137453857};
  double total = 0.0;
  for (int q = 0; q < 4; ++q) {
    const double u = 0.5 * width * (x[q] + 1.0);
    double p = 0.0;
    for (int i = 0; i < count; ++i) {
      double basis = 1.0;
      for (int j = 0; j < count; ++j) {
        if (j != i) basis *= (u - nodes[j]) / (nodes[i] - nodes[j]);
      }
      p += values[i] * basis;
    }
    total += w[q] * p;
  }
  return 0.5 * width * total;
}

struct SequentialFit {
  std::vector<double> coeffs;
  std::vector<double> table_errors;
};

// h[k] = u_k^-lo f(u_k) on u_k = t[k]; peels off one order at a time.
SequentialFit sequential_richardson(std::vector<double> h, const std::vector<double>& t,
                                    int count) {
  SequentialFit fit;
  for (int j = 0; j < count; ++j) {
    const RichardsonResult r = richardson_limit(h, 2.0, 1);
    fit.coeffs.push_back(r.value);
    fit.table_errors.push_back(r.error);
    for (std::size_t k = 0; k < h.size(); ++k) h[k] = (h[k] - r.value) / t[k];
  }
  return fit;
}

}  // namespace

SingularExpansion SingularExpansion::from_map(std::map<int, double> coeffs) {
  SingularExpansion s;
  s.coeffs = std::move(coeffs);
  s.lowest_order = s.coeffs.empty() ? 0 : std::min(0, s.coeffs.begin()->first);
  s.validate();
  return s;
}

double SingularExpansion::coeff(int order) const {
  auto it = coeffs.find(order);
  if (it != coeffs.end()) return it->second;
  if (order < lowest_order) return 0.0;
  throw InputError("SingularExpansion: missing coefficient of order " + std::to_string(order));
}

int SingularExpansion::highest_order() const {
  return coeffs.empty() ? lowest_order : coeffs.rbegin()->first;
}

double SingularExpansion::singular_part(double u, int max_order) const {
  double s = 0.0;
  for (const auto& [order, c] : coeffs) {
    if (order > max_order) break;
    s += c * std::pow(u, order);
  }
  return s;
}

void SingularExpansion::validate() const {
  if (lowest_order > 0) throw InputError("SingularExpansion: lowest order must be <= 0");
  for (int i = lowest_order; i <= 0; ++i) {
    if (!has(i)) {
      throw InputError("SingularExpansion: missing coefficient of order " + std::to_string(i));
    }
  }
  for (const auto& [order, c] : coeffs) {
    if (order < lowest_order) {
      throw InputError("SingularExpansion: coefficient below lowest order " +
                       std::to_string(order));
    }
    if (!std::isfinite(c)) {
      throw InputError("SingularExpansion: non-finite coefficient of order " +
                       std::to_string(order));
    }
  }
}

void DecayBound::validate() const {
  if (!(rate > 0.0)) throw InputError("DecayBound: rate must be > 0");
  if (!(scale > 0.0)) throw InputError("DecayBound: scale must be > 0");
  if (!(onset > 0.0)) throw InputError("DecayBound: onset must be > 0");
}

double mellin_at_zero(const RealFunction& f, const SingularExpansion& sing) {
  sing.validate();
  // Sampling check: the residual must shrink as u -> 0.
  const double u = 1.0 / 64.0;
  const double r_big = std::abs(f(u) - sing.singular_part(u));
  const double r_small = std::abs(f(u / 8.0) - sing.singular_part(u / 8.0));
  const double floor = 1e6 * kEps * (cancellation_scale(sing, u / 8.0) + 1.0);
  if (r_small > floor && r_small > 0.5 * r_big) {
    throw PreconditionError("mellin_at_zero: function does not match its singular expansion");
  }
  return sing.coeff(0);
}

MellinResult mellin_derivative_at_zero(const RealFunction& f, const SingularExpansion& sing,
                                       const DecayBound& decay, const MellinOptions& options) {
  sing.validate();
  decay.validate();
  if (!(options.abs_tol > 0.0)) throw InputError("MellinOptions: abs_tol must be > 0");
  const double tol = options.abs_tol;

  auto residual = [&](double u) { return f(u) - sing.singular_part(u); };
  auto scale = [&](double u) {
    double s = cancellation_scale(sing, u);
    if (options.term_scale) s = std::max(s, std::abs(options.term_scale(u)));
    return s;
  };

  // Lower cutoff: below delta the subtraction loses more than tol.
  int panels_low = 20;
  while (panels_low > 4 && kEps * scale(std::ldexp(1.0, -panels_low)) > tol) --panels_low;
  const double delta = std::ldexp(1.0, -panels_low);

  // Integrability check of the subtracted integrand r(u)/u.
  {
    const double ua = std::min(0.125, 64.0 * delta);
    const double ub = ua / 8.0;
    const double ra = std::abs(residual(ua));
    const double rb = std::abs(residual(ub));
    const double floor = 16.0 * kEps * scale(ub) + tol;
    if (ra > floor && rb > floor && rb > ra / std::sqrt(8.0)) {
      std::ostringstream msg;
      msg << "mellin_derivative_at_zero: residual f - singular part is not O(u) near 0 "
          << "(|r(" << ua << ")| = " << ra << ", |r(" << ub << ")| = " << rb << ")";
      throw PreconditionError(msg.str());
    }
  }

  auto subtracted = [&](double u) { return residual(u) / u; };

  MellinResult out;
  double error = 0.0;

  // (delta, 1]: dyadic panels clustered toward 0.
  double low = 0.0;
  for (int k = 0; k < panels_low; ++k) {
    const double b = std::ldexp(1.0, -k);
    // Rounding of f - singular part, divided by u, at the panel's left end.
    const double noise = 16.0 * kEps * scale(0.5 * b) / (0.5 * b);
    const quad::Estimate e = quad::adaptive(subtracted, 0.5 * b, b, tol / (8.0 * panels_low),
                                            options.max_depth, noise);
    low += e.value;
    error += e.error;
  }

  // (0, delta]: polynomial models of r(u)/u through delta 2^i, integrated
  // exactly; the cubic is used, the quadratic only for the error estimate.
  {
    const std::array<double, 4> nodes = {delta, 2.0 * delta, 4.0 * delta, 8.0 * delta};
    std::array<double, 4> values{};
    for (int i = 0; i < 4; ++i) values[i] = subtracted(nodes[i]);
    const double cubic = interpolant_integral(nodes, values, 4, delta);
    const double quadratic = interpolant_integral(nodes, values, 3, delta);
    low += cubic;
    error += std::abs(cubic - quadratic) + 64.0 * kEps * scale(delta);
  }

  // [1, U]: U chosen so that scale * exp(-rate U) / rate <= tol / 4.
  const double lambda = decay.rate;
  const double upper = std::max(
      {1.0, decay.onset, std::log(4.0 * decay.scale / (lambda * tol)) / lambda});
  const int panels_high = std::max(1, static_cast<int>(std::ceil(upper - 1.0)));
  const double width = (upper - 1.0) / panels_high;
  auto over_u = [&](double u) { return f(u) / u; };
  double high = 0.0;
  for (int k = 0; k < panels_high && width > 0.0; ++k) {
    const double a = 1.0 + k * width;
    const quad::Estimate e =
        quad::adaptive(over_u, a, a + width, tol / (8.0 * panels_high), options.max_depth);
    high += e.value;
    error += e.error;
  }
  error += decay.scale * std::exp(-lambda * upper) / lambda;

  double algebraic = 0.0;
  for (const auto& [order, c] : sing.coeffs) {
    if (order >= 0) break;
    algebraic += c / order;
  }
  const double f0 = sing.coeff(0);
  // -Gamma'(1) f_0 with Gamma'(1) = -gamma.
  algebraic += specfun::euler_gamma() * f0;

  out.value_at_zero = f0;
  out.derivative_at_zero = low + high + algebraic;
  out.error_estimate = error;
  return out;
}

ExtractedExpansion extract_small_u_coefficients(const RealFunction& f, int lowest_order,
                                                int highest_order,
                                                const ExtractionOptions& options) {
  if (lowest_order > 0) throw InputError("extract_small_u_coefficients: lowest order must be <= 0");
  if (highest_order < lowest_order) {
    throw InputError("extract_small_u_coefficients: highest order below lowest order");
  }
  if (!(options.u0 > 0.0) || options.levels < 3) {
    throw InputError("extract_small_u_coefficients: need u0 > 0 and at least 3 levels");
  }

  const int levels = options.levels;
  std::vector<double> t(levels + 1);
  std::vector<double> h(levels + 1);
  double h_scale = 0.0;
  for (int k = 0; k <= levels; ++k) {
    t[k] = std::ldexp(options.u0, -k);
    h[k] = std::pow(t[k], -lowest_order) * f(t[k]);
    if (!std::isfinite(h[k])) {
      throw PreconditionError("extract_small_u_coefficients: non-finite sample at u = " +
                              std::to_string(t[k]));
    }
    h_scale = std::max(h_scale, std::abs(h[k]));
  }

  ExtractedExpansion out;
  out.requested_highest = highest_order;

  // Noise amplification of order j: Richardson table gain times the division
  // by u_min for each previously removed order.
  const double table_gain = richardson_limit(h, 2.0, 1).amplification;
  const double inv_min = 1.0 / t[levels];
  int count = highest_order - lowest_order + 1;
  double condition = table_gain;
  for (int j = 0; j < count; ++j) {
    const double cj = table_gain * std::pow(inv_min, j);
    if (cj > options.condition_limit) {
      std::ostringstream msg;
      msg << "highest order reduced from " << highest_order << " to " << (lowest_order + j - 1)
          << ": condition estimate " << cj << " exceeds " << options.condition_limit;
      out.note = msg.str();
      count = j;
      break;
    }
    condition = cj;
  }
  if (count == 0) {
    throw PreconditionError("extract_small_u_coefficients: even the lowest order is "
                            "ill-conditioned on this grid");
  }

  const SequentialFit full = sequential_richardson(h, t, count);
  // Same samples minus the coarsest point: a shifted grid for an independent estimate.
  const SequentialFit shifted = sequential_richardson(
      std::vector<double>(h.begin() + 1, h.end()), std::vector<double>(t.begin() + 1, t.end()),
      count);

  for (int j = 0; j < count; ++j) {
    const int order = lowest_order + j;
    const double noise = table_gain * std::pow(inv_min, j) * kEps * h_scale;
    out.expansion.coeffs[order] = full.coeffs[j];
    out.errors[order] =
        std::abs(full.coeffs[j] - shifted.coeffs[j]) + full.table_errors[j] + noise;
  }
  out.expansion.lowest_order = lowest_order;
  out.highest_order = lowest_order + count - 1;
  out.condition = condition;
  return out;
}

double regularized_det_from_zeta(double zeta_value_at_0, double zeta_derivative_at_0) {
  if (!std::isfinite(zeta_value_at_0) || !std::isfinite(zeta_derivative_at_0)) {
    throw InputError("regularized_det_from_zeta: non-finite input");
  }
  return std::exp(-zeta_derivative_at_0);
}

DecayBound fit_decay_bound(const RealFunction& f, double u_lo, double u_hi, int samples,
                           double margin) {
  if (!(u_lo > 0.0) || !(u_hi > u_lo) || samples < 2 || !(margin >= 1.0)) {
    throw InputError("fit_decay_bound: need 0 < u_lo < u_hi, samples >= 2, margin >= 1");
  }
  std::vector<double> us;
  std::vector<double> logs;
  for (int k = 0; k < samples; ++k) {
    const double u = u_lo + (u_hi - u_lo) * k / (samples - 1);
    const double v = std::abs(f(u));
    if (v > 0.0 && std::isfinite(v)) {
      us.push_back(u);
      logs.push_back(std::log(v));
    }
  }
  if (us.size() < 2) throw PreconditionError("fit_decay_bound: function vanishes on the window");
  const double n = static_cast<double>(us.size());
  double su = 0.0, sl = 0.0, suu = 0.0, sul = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    su += us[i];
    sl += logs[i];
    suu += us[i] * us[i];
    sul += us[i] * logs[i];
  }
  const double slope = (n * sul - su * sl) / (n * suu - su * su);
  if (!(slope < 0.0)) throw PreconditionError("fit_decay_bound: no exponential decay detected");
  DecayBound bound;
  bound.rate = -slope;
  bound.onset = u_lo;
  double scale = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    scale = std::max(scale, std::exp(logs[i] + bound.rate * us[i]));
  }
  bound.scale = scale * margin;
  return bound;
}

}  // namespace rst::mellin
