#pragma once

#include "rst/richardson.hpp"

// Independent reference computations used to cross-check the library. None of
// these share code paths with the production special functions: zeta comes
// from Euler-Maclaurin summation instead of the accelerated eta series.
namespace rst::oracle {

// Euler-Maclaurin: sum_{k<N} k^-s + N^{1-s}/(s-1) + N^-s/2 + Bernoulli tail.
double zeta_euler_maclaurin(double s, int N = 24);
double zeta_derivative_euler_maclaurin(double s, int N = 24);

// Richardson-extrapolated central differences of specfun::riemann_zeta.
RichardsonResult zeta_derivative_finite_difference(double s, double h0 = 0.125, int levels = 6);

// zeta'(s) from the differentiated functional equation with zeta(1-s),
// zeta'(1-s) from Euler-Maclaurin. s must be 0 or a negative integer.
double zeta_derivative_functional_equation(int s);

// gamma = H_N - log N - 1/(2N) + sum B_2k / (2k N^2k).
double euler_gamma_harmonic(int N = 1000);

// lim_{s -> 1} (zeta(s) - 1/(s-1)) by symmetric Richardson in h = s - 1.
RichardsonResult euler_gamma_zeta_limit(double h0 = 0.125, int levels = 6);

// zeta(s) - 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s), all from specfun.
double functional_equation_residual(double s);

}  // namespace rst::oracle
