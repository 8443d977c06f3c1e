#pragma once

#include <array>
#include <string>
#include <vector>

#include "rst/mellin.hpp"
#include "rst/quadrature.hpp"

// Model heat-kernel ingredients on C^n: the four g-functions, the Mehler
// kernel of the harmonic oscillator, Gaussian moment (Duhamel) integrals,
// exterior-algebra supertraces and the integrated density A(u).
//
// Two time conventions appear and are kept apart by name:
//   grading_weight(u, j)       = exp(-4 pi u j)   raw Mehler kernel at time u
//   rescaled_exponent(u) * j   = 2 pi u j          after the u -> u/2 rescaling,
//                                                  the `a` of the supertrace formulas
namespace rst::heat {

enum class GFunctionId { G1, G2, G2_TILDE, G3_TILDE };

inline constexpr std::array<GFunctionId, 4> kAllGFunctions = {
    GFunctionId::G1, GFunctionId::G2, GFunctionId::G2_TILDE, GFunctionId::G3_TILDE};

std::string to_string(GFunctionId id);

// With x = 2 pi u:
//   g1 = e^-x / (1 - e^-x)        g2 = e^-x / (1 - e^-x)^2
//   g2~ = u g2                    g3~ = u e^-x / (1 - e^-x)^3
double g_eval(GFunctionId id, double u);

mellin::SingularExpansion g_small_u_coeffs(GFunctionId id);

// Closed Mellin transforms in terms of zeta.
double g_mellin_closed(GFunctionId id, double z);
double g_mellin_closed_derivative_at_zero(GFunctionId id);

// Analytic envelope |g(u)| <= e^{-pi u} for u >= 1.
mellin::DecayBound g_decay_bound(GFunctionId id);

struct MehlerParams {
  double u = 0.0;
  int n = 1;
  double B_u = 0.0;  // pi / (2 tanh(pi u))
  double C_u = 0.0;  // (1 - e^{-2 pi u})^{-n}
};

MehlerParams mehler_params(int n, double u);

// Scalar part of the kernel at time u: C_{2u} exp(-B_{2u} |Z|^2).
double mehler_scalar(int n, double u, double r2);

// exp(-4 pi u j), the N-grading of the raw kernel.
double grading_weight(double u, int j);

// 2 pi u, the supertrace exponent `a` after rescaling.
double rescaled_exponent(double u);

enum class MomentKind { UNIT, ZJ2, ZI2ZJ2 };

std::string to_string(MomentKind kind);

// int_0^u dv int_{R^2n} K_v(0,Z) P(Z) K_{u-v}(Z,0) dZ with P = 1, |z_j|^2 or
// |z_i|^2 |z_j|^2, times grading_weight(u, degree). same_index selects i = j.
double moment_integral_closed(int n, double u, MomentKind kind, int degree = 0,
                              bool same_index = true);

// Nested numeric version of the same integral (radial Gaussian quadrature
// per complex plane inside an adaptive v-integral). Degree 0 weight.
quad::Estimate moment_integral_quadrature(int n, double u, MomentKind kind,
                                          bool same_index = true, double abs_tol = 1e-11);

// Str[N e^{-aN}] on Lambda(C^n) (x) E.
double strace_closed(int n, int rk_e, double a);

// Str[N (sum a_ij wbar^i ^ i_{wbar_j}) e^{-aN}] with trace of the diagonal diag_sum.
double strace_endo_closed(int n, double a, double diag_sum);

// Direct enumeration over subsets S of {1..n}. With an empty endo_diagonal the
// weight is rk_e; otherwise it is sum_{i in S} endo_diagonal[i].
double strace_bruteforce(int n, double a, const std::vector<double>& endo_diagonal = {},
                         int rk_e = 1);

inline constexpr int kBruteforceMaxDim = 12;

struct CurvaturePoint {
  int n = 1;
  int rk_e = 1;
  double lam_c1tm = 0.0;  // Lambda_omega c1(TM) at the point
  double lam_c1e = 0.0;   // Lambda_omega c1(E) at the point

  void validate() const;
};

struct ContractedCurvature {
  double sum_R = 0.0;     // sum_{ij} R_{i ibar j jbar}
  double sum_RE = 0.0;    // sum_i tr R^E_{i ibar}
  double r_scalar = 0.0;  // scalar curvature r^M
};

ContractedCurvature curvature_from_chern(const CurvaturePoint& point);

// Pointwise Str[N a_{1,u}].
double strace_N_a1(const CurvaturePoint& point, double u);

struct GeometricData {
  int n = 1;
  int rk_e = 1;
  double vol = 1.0;               // int omega^n / n!
  double int_c1tm = 0.0;          // int c1(TM) omega^{n-1}/(n-1)!
  double int_c1e = 0.0;           // int c1(E) omega^{n-1}/(n-1)!
  double log_det_integral = 0.0;  // int log det(R^L / 2pi) omega^n / n!
  bool theta_equals_omega = true; // Kaehler normalization of the metric

  void validate() const;
};

// A(u) = -rk int_c1tm (g2 + n/2 g1 - 2pi g3~) - int_c1e (n g1 - 2pi g2~)
double A_of_u(const GeometricData& geom, double u);
mellin::SingularExpansion A_small_u_coeffs(const GeometricData& geom);
mellin::DecayBound A_decay_bound(const GeometricData& geom);
// Sum of the absolute values of the terms of A(u); the singular parts of the
// terms cancel for some geometries (CP^1), so |A| alone understates rounding.
double A_term_scale(const GeometricData& geom, double u);

}  // namespace rst::heat
