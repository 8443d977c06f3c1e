#pragma once

#include <cstdint>

#include "rst/heatmodel.hpp"
#include "rst/richardson.hpp"

// Exact torsion and L2 covolume of O(p) on CP^1 with the Fubini-Study metric,
// and their large-p asymptotics.
namespace rst::cp1 {

// 2 log T(p) = 2 sum_{j=1}^p (p-j) log(j+1) - (p+1) log (p+1)! - 4 zeta'(-1)
//              + (p+1)^2/2 - log(2pi) p / 2 - 2/3 log(2pi)
double cp1_exact_2logT(std::int64_t p);

// -1/2 p log p - 2/3 log p - 1/6 log(2pi) - 7/12 - 2 zeta'(-1); p >= 2.
double cp1_asymptotic(std::int64_t p);

// 2 log T(p) - cp1_asymptotic(p), formed before rounding to double.
double cp1_residual(std::int64_t p);

// sum_q (-1)^q log Vol_L2 = 2 log prod_{j=1}^p j! - (p+1) log (p+1)!
double cp1_covolume(std::int64_t p);

// Same quantity as sum_{j=0}^p log ||x_j||, ||x_j|| = j!(p-j)!/(p+1)!.
double cp1_covolume_from_norms(std::int64_t p);

// -p^2/2 - p log p / 2 + (log(2pi)/2 - 1) p - 2/3 log p + 2 zeta'(-1)
// + log(2pi)/2 - 13/12; p >= 2.
double covolume_asymptotic(std::int64_t p);

// cp1_covolume(p) - covolume_asymptotic(p), formed before rounding to double.
double covolume_residual(std::int64_t p);

struct ArithmeticDegree {
  double lhs = 0.0;  // 2 log T(p) - covolume(p)
  double rhs = 0.0;  // (p+1)^2/2 - 4 zeta'(-1) - log(2pi) p / 2 - 2/3 log(2pi)
};

ArithmeticDegree arithmetic_degree_check(std::int64_t p);

struct Cp1Report {
  std::int64_t p = 1;
  double two_log_T = 0.0;
  double covolume = 0.0;
  double asymptotic_prediction = 0.0;  // NaN for p = 1
  double residual = 0.0;               // NaN for p = 1
  double arithmetic_degree = 0.0;      // lhs of the identity
  double arithmetic_degree_closed = 0.0;
};

Cp1Report cp1_report(std::int64_t p);

// Geometric data of CP^1 with O(1): n = 1, rk E = 1, vol = 1, int c1(TM) = 2.
heat::GeometricData cp1_geometry();

// Richardson limit of 2 log T(p) + p log p / 2 + 2/3 log p on p = p0 2^k.
RichardsonResult extrapolate_torsion_constant(std::int64_t p0, int levels);

// Richardson limit of the covolume minus its non-constant asymptotic terms.
RichardsonResult extrapolate_covolume_constant(std::int64_t p0, int levels);

// Closed constants for comparison.
double torsion_constant();   // -1/6 log(2pi) - 7/12 - 2 zeta'(-1)
double covolume_constant();  // 2 zeta'(-1) + log(2pi)/2 - 13/12

}  // namespace rst::cp1
