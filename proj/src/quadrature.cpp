#include "rst/quadrature.hpp"

#include <array>
#include <cmath>

namespace rst::quad {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the embedded Gauss points.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

void adaptive_impl(const Integrand& f, double a, double b, double tol, int depth, double noise,
                   Estimate& acc) {
  const Estimate panel = gauss_kronrod_15(f, a, b);
  acc.evaluations += panel.evaluations;
  if (panel.error <= tol || panel.error <= 4.0 * noise * (b - a) || depth <= 0 ||
      (b - a) <= 1e-15 * std::abs(a + b)) {
    acc.value += panel.value;
    acc.error += panel.error;
    return;
  }
  const double mid = 0.5 * (a + b);
  adaptive_impl(f, a, mid, 0.5 * tol, depth - 1, noise, acc);
  adaptive_impl(f, mid, b, 0.5 * tol, depth - 1, noise, acc);
}

}  // namespace

Estimate gauss_kronrod_15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half), 15};
}

Estimate adaptive(const Integrand& f, double a, double b, double abs_tol, int max_depth,
                  double noise) {
  Estimate acc;
  if (a == b) return acc;
  adaptive_impl(f, a, b, abs_tol, max_depth, noise, acc);
  return acc;
}

}  // namespace rst::quad
