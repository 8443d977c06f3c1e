#pragma once

#include <functional>
#include <map>
#include <string>

// Regularized Mellin transform at z = 0.
//
// For f on (0, inf) with f(u) = sum_{i=lo}^{0} f_i u^i + O(u) as u -> 0 and
// exponential decay at infinity, M[f](z) = Gamma(z)^-1 int f u^(z-1) du
// continues holomorphically to z = 0 with
//   M[f](0)  = f_0
//   M[f]'(0) = int_0^1 (f - sum f_i u^i) du/u + int_1^inf f du/u
//              + sum_{i<0} f_i / i - Gamma'(1) f_0.
namespace rst::mellin {

using RealFunction = std::function<double(double)>;

// Small-u singular part. coeffs holds order -> coefficient; every order in
// [lowest_order, 0] must be present. Positive orders may be stored too (they
// are ignored by the transform but kept by coefficient extraction).
struct SingularExpansion {
  int lowest_order = 0;
  std::map<int, double> coeffs;

  static SingularExpansion from_map(std::map<int, double> coeffs);

  bool has(int order) const { return coeffs.count(order) != 0; }
  double coeff(int order) const;  // 0 below lowest_order, InputError for other missing orders
  int highest_order() const;

  // Evaluates sum_{i <= max_order} f_i u^i.
  double singular_part(double u, int max_order = 0) const;

  void validate() const;
};

// |f(u)| <= scale * exp(-rate * u) for u >= onset.
struct DecayBound {
  double rate = 1.0;
  double scale = 1.0;
  double onset = 1.0;

  void validate() const;
};

struct MellinResult {
  double value_at_zero = 0.0;
  double derivative_at_zero = 0.0;
  double error_estimate = 0.0;
};

struct MellinOptions {
  double abs_tol = 1e-11;
  int max_depth = 16;  // bisection depth per panel
  // Optional bound on the size of the terms that cancel when f is evaluated
  // (e.g. sum |c_k g_k(u)| for f = sum c_k g_k). Without it the rounding model
  // uses only the singular coefficients, which underestimates it when those
  // cancel between constituents.
  RealFunction term_scale;
};

double mellin_at_zero(const RealFunction& f, const SingularExpansion& sing);

MellinResult mellin_derivative_at_zero(const RealFunction& f, const SingularExpansion& sing,
                                       const DecayBound& decay, const MellinOptions& options = {});

struct ExtractionOptions {
  double u0 = 0.25;                // coarsest grid point
  int levels = 8;                  // grid is u0 * 2^-k, k = 0..levels
  double condition_limit = 1e10;   // reject orders whose noise amplification exceeds this
};

struct ExtractedExpansion {
  SingularExpansion expansion;
  std::map<int, double> errors;  // per-order error estimate
  int requested_highest = 0;
  int highest_order = 0;         // may be lower than requested when ill-conditioned
  double condition = 1.0;        // noise amplification of the last accepted order
  std::string note;              // non-empty when the order was reduced
};

// Recovers f_lo..f_hi of f(u) = sum_{i>=lo} f_i u^i by sequential Richardson
// elimination on the geometric grid u0 * 2^-k.
ExtractedExpansion extract_small_u_coefficients(const RealFunction& f, int lowest_order,
                                                int highest_order,
                                                const ExtractionOptions& options = {});

// det = exp(-zeta'(0)). zeta(0) is accepted for symmetry with the usual
// (value, derivative) pair and only checked for finiteness.
double regularized_det_from_zeta(double zeta_value_at_0, double zeta_derivative_at_0);

// Empirical exponential envelope of f on [u_lo, u_hi]: least-squares slope of
// log|f| for the rate, then the smallest scale that dominates every sample,
// padded by `margin`.
DecayBound fit_decay_bound(const RealFunction& f, double u_lo, double u_hi, int samples = 64,
                           double margin = 2.0);

}  // namespace rst::mellin
