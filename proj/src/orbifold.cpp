#include "rst/orbifold.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rst/errors.hpp"
#include "rst/quadrature.hpp"

namespace rst::orbifold {

namespace {

constexpr double kPi = std::numbers::pi;

void require_rank(int rk_e) {
  if (rk_e < 0) throw InputError("orbifold: rk_e must be >= 0");
}

}  // namespace

void StratumData::validate(int n) const {
  if (n_j < 0) throw InputError("StratumData: n_j must be >= 0");
  if (n_j >= n) {
    throw InputError("StratumData: n_j = " + std::to_string(n_j) + " must be below n = " +
                     std::to_string(n));
  }
  if (m_j < 1) throw InputError("StratumData: m_j must be >= 1");
  if (!std::isfinite(theta_j)) throw InputError("StratumData: theta_j must be finite");
  if (static_cast<int>(angles.size()) != n - n_j) {
    throw InputError("StratumData: expected " + std::to_string(n - n_j) + " rotation angles, got " +
                     std::to_string(angles.size()));
  }
  for (double phi : angles) {
    if (!std::isfinite(phi)) throw InputError("StratumData: non-finite rotation angle");
    // A rotation angle of 0 mod 2pi would be a fixed normal direction.
    if (std::abs(std::remainder(phi, 2.0 * kPi)) < 1e-12) {
      throw DomainError("StratumData: rotation angle " + std::to_string(phi) +
                        " is 0 mod 2pi (the isotropy would fix a normal direction)");
    }
  }
  if (!(volume > 0.0) || !std::isfinite(volume)) {
    throw InputError("StratumData: volume must be > 0");
  }
}

void OrbifoldData::validate() const {
  geom.validate();
  for (const StratumData& s : strata) s.validate(geom.n);
}

std::complex<double> twisted_strace_kernel(const std::vector<double>& angles, int n, int n_j,
                                           int rk_e, double t,
                                           const std::vector<std::complex<double>>& Z) {
  if (!(t > 0.0)) throw DomainError("twisted_strace_kernel: requires t > 0");
  require_rank(rk_e);
  const int d = n - n_j;
  if (static_cast<int>(angles.size()) != d || static_cast<int>(Z.size()) != d) {
    throw InputError("twisted_strace_kernel: need one angle and one coordinate per normal direction");
  }
  double norm2 = 0.0;
  std::complex<double> pairing{0.0, 0.0};
  for (int k = 0; k < d; ++k) {
    const double r2 = std::norm(Z[k]);
    norm2 += r2;
    pairing += std::polar(r2, -angles[k]);
  }
  const double prefactor = -static_cast<double>(rk_e) * n / std::expm1(4.0 * kPi * t);
  const std::complex<double> exponent =
      -kPi * norm2 / std::tanh(2.0 * kPi * t) + kPi * pairing / std::sinh(2.0 * kPi * t);
  return prefactor * std::exp(exponent);
}

double c_ju0(const StratumData& stratum, int n, int rk_e, double u) {
  stratum.validate(n);
  require_rank(rk_e);
  if (u < 0.0) throw DomainError("c_ju0: requires u >= 0");
  const int d = stratum.codim(n);
  // Divide numerator and denominator by cosh(pi u)^d: stable for large u and
  // continuous at u = 0.
  const double x = kPi * u;
  const double sech = 1.0 / std::cosh(x);
  const double decay = 2.0 * std::exp(-2.0 * x) / (1.0 + std::exp(-2.0 * x));  // e^{-x} / cosh x
  double denom = 2.0;
  for (double phi : stratum.angles) {
    denom *= std::sqrt(1.0 - 2.0 * std::cos(phi) * sech + sech * sech);
  }
  return -static_cast<double>(rk_e) * n * std::pow(std::tanh(x), d - 1) * decay / denom;
}

FiberIntegral c_ju0_quadrature_oracle(const StratumData& stratum, int n, int rk_e, double u,
                                      double abs_tol) {
  stratum.validate(n);
  require_rank(rk_e);
  if (!(u > 0.0)) throw DomainError("c_ju0_quadrature_oracle: requires u > 0");
  const int d = stratum.codim(n);
  if (d > 2) throw InputError("c_ju0_quadrature_oracle: oracle limited to codimension <= 2");

  // The density integrates the kernel of e^{-(u/2) L}: with t = u / 2 the
  // e^{-4 pi t} prefactor becomes the e^{-pi u} of the closed form.
  const double t = 0.5 * u;
  std::vector<double> reach(d);
  for (int k = 0; k < d; ++k) {
    const double re_coeff = kPi / std::tanh(2.0 * kPi * t) -
                            kPi * std::cos(stratum.angles[k]) / std::sinh(2.0 * kPi * t);
    reach[k] = std::sqrt(50.0 / re_coeff);
  }

  auto integrate_part = [&](bool imaginary) {
    auto kernel = [&](double r1, double r2) {
      std::vector<std::complex<double>> Z{{r1, 0.0}};
      if (d == 2) Z.emplace_back(r2, 0.0);
      const std::complex<double> k =
          twisted_strace_kernel(stratum.angles, n, stratum.n_j, rk_e, t, Z);
      return imaginary ? k.imag() : k.real();
    };
    if (d == 1) {
      return quad::adaptive([&](double r) { return 2.0 * kPi * r * kernel(r, 0.0); }, 0.0,
                            reach[0], abs_tol, 40);
    }
    double inner_error = 0.0;
    auto outer = [&](double r1) {
      const quad::Estimate in = quad::adaptive(
          [&](double r2) { return 2.0 * kPi * r2 * kernel(r1, r2); }, 0.0, reach[1],
          0.1 * abs_tol, 40);
      inner_error = std::max(inner_error, in.error);
      return 2.0 * kPi * r1 * in.value;
    };
    quad::Estimate e = quad::adaptive(outer, 0.0, reach[0], abs_tol, 40);
    e.error += inner_error * 2.0 * kPi * reach[0] * reach[0];
    return e;
  };

  const quad::Estimate re = integrate_part(false);
  const quad::Estimate im = integrate_part(true);
  FiberIntegral out;
  out.raw = {re.value, im.value};
  out.value = (rk_e > 0 ? -1.0 : 0.0) * std::abs(out.raw);
  out.error = std::hypot(re.error, im.error);
  return out;
}

double gamma_j0(const StratumData& stratum, int n, int rk_e) {
  stratum.validate(n);
  if (stratum.codim(n) != 1) return 0.0;
  return c_ju0(stratum, n, rk_e, 0.0) * stratum.volume;
}

double c_j_closed(const StratumData& stratum, int n, int rk_e) {
  stratum.validate(n);
  require_rank(rk_e);
  if (stratum.codim(n) != 1) {
    throw DomainError("c_j_closed: only defined for codimension-1 strata (codim = " +
                      std::to_string(stratum.codim(n)) + ")");
  }
  double det = 1.0;
  for (double phi : stratum.angles) det *= 2.0 - 2.0 * std::cos(phi);
  return -static_cast<double>(n) * rk_e / std::sqrt(det);
}

mellin::DecayBound c_ju0_decay_bound(const StratumData& stratum, int n, int rk_e) {
  const double scale =
      static_cast<double>(rk_e) * n * std::pow(1.2, stratum.codim(n));
  return {kPi, std::max(scale, std::numeric_limits<double>::min()), 1.0};
}

KappaResult kappa_j0(const StratumData& stratum, int n, int rk_e, const KappaOptions& options) {
  stratum.validate(n);
  require_rank(rk_e);
  auto c = [&](double u) { return c_ju0(stratum, n, rk_e, u); };
  // c_{j,u,0} is bounded at 0: only the order-0 coefficient is needed.
  const mellin::ExtractedExpansion sing =
      mellin::extract_small_u_coefficients(c, 0, 0, options.extraction);
  const mellin::MellinResult m = mellin::mellin_derivative_at_zero(
      c, sing.expansion, c_ju0_decay_bound(stratum, n, rk_e), options.mellin);
  KappaResult out;
  out.value = -stratum.volume * m.derivative_at_zero;
  out.error = stratum.volume * (m.error_estimate + sing.errors.at(0) * 16.0);
  return out;
}

std::vector<StratumCoefficients> orbifold_coefficients(const OrbifoldData& data,
                                                       const KappaOptions& options) {
  data.validate();
  std::vector<StratumCoefficients> out;
  for (const StratumData& s : data.strata) {
    StratumCoefficients c;
    c.gamma = gamma_j0(s, data.geom.n, data.geom.rk_e);
    const KappaResult k = kappa_j0(s, data.geom.n, data.geom.rk_e, options);
    c.kappa = k.value;
    c.kappa_error = k.error;
    out.push_back(c);
  }
  return out;
}

std::complex<double> orbifold_expansion_eval(const OrbifoldData& data,
                                             const std::vector<StratumCoefficients>& coeffs,
                                             const torsion::ExpansionTable& manifold_table,
                                             std::int64_t p, int k) {
  data.validate();
  if (coeffs.size() != data.strata.size()) {
    throw InputError("orbifold_expansion_eval: one coefficient set per stratum required");
  }
  std::complex<double> total{torsion::expansion_eval(manifold_table, p, k), 0.0};
  const double x = static_cast<double>(p);
  const double lp = std::log(x);
  for (std::size_t j = 0; j < data.strata.size(); ++j) {
    const StratumData& s = data.strata[j];
    const double phase = std::fmod(s.theta_j * x, 2.0 * kPi);
    const double magnitude = std::pow(x, s.n_j) / s.m_j * (coeffs[j].gamma * lp + coeffs[j].kappa);
    total += std::polar(1.0, phase) * magnitude;
  }
  return total;
}

std::complex<double> orbifold_expansion_eval(const OrbifoldData& data,
                                             const torsion::ExpansionTable& manifold_table,
                                             std::int64_t p, int k) {
  return orbifold_expansion_eval(data, orbifold_coefficients(data), manifold_table, p, k);
}

}  // namespace rst::orbifold
