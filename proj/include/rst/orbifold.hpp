#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "rst/heatmodel.hpp"
#include "rst/mellin.hpp"
#include "rst/torsion.hpp"

// Contributions of the singular strata of a compact Kaehler orbifold to the
// torsion expansion: for each stratum of complex dimension n_j the extra terms
//   (p^{n_j} / m_j) e^{i theta_j p} (gamma_{j,0} log p + kappa_{j,0}).
namespace rst::orbifold {

struct StratumData {
  int n_j = 0;                  // complex dimension of the stratum
  int m_j = 1;                  // multiplicity
  double theta_j = 0.0;         // phase of the isotropy action on the line bundle
  std::vector<double> angles;   // rotation angles on the n - n_j normal directions
  double volume = 1.0;          // stratum volume, a direct input

  int codim(int n) const { return n - n_j; }
  void validate(int n) const;
};

struct OrbifoldData {
  heat::GeometricData geom;
  std::vector<StratumData> strata;

  void validate() const;
};

// Str[N(g,1) e^{-t L}(g^-1 Z, Z)] for the model operator on the normal fiber,
//   -rk n e^{-4 pi t} / (1 - e^{-4 pi t})
//     * exp(-pi |Z|^2 / tanh(2 pi t) + pi <g^-1 Z, Z> / sinh(2 pi t)),
// with <g^-1 Z, Z> = sum_k e^{-i phi_k} |z_k|^2. The pairing is complex, so
// the kernel is too.
std::complex<double> twisted_strace_kernel(const std::vector<double>& angles, int n, int n_j,
                                           int rk_e, double t,
                                           const std::vector<std::complex<double>>& Z);

// c_{j,u,0} = -rk n e^{-pi u} sinh(pi u)^{d-1}
//             / (2 prod_k sqrt(cosh(pi u)^2 - 2 cos(phi_k) cosh(pi u) + 1)),
// d = n - n_j, extended continuously to u = 0.
double c_ju0(const StratumData& stratum, int n, int rk_e, double u);

struct FiberIntegral {
  double value = 0.0;            // sign(prefactor) |J|, the quantity matching c_ju0
  double error = 0.0;
  std::complex<double> raw{};    // J = integral of the kernel over the normal fiber
};

// Numeric fiber integral of twisted_strace_kernel at time t = u / 2, radial in
// each normal plane (the kernel depends on |z_k| only). Codimension <= 2.
FiberIntegral c_ju0_quadrature_oracle(const StratumData& stratum, int n, int rk_e, double u,
                                      double abs_tol = 1e-10);

// c_ju0(u = 0) * volume; zero unless codim = 1.
double gamma_j0(const StratumData& stratum, int n, int rk_e);

// -n rk det(Id - g)^{-1/2} with det(Id - g) = prod_k (2 - 2 cos phi_k). Codim 1 only.
double c_j_closed(const StratumData& stratum, int n, int rk_e);

struct KappaResult {
  double value = 0.0;
  double error = 0.0;
};

struct KappaOptions {
  mellin::MellinOptions mellin{};
  mellin::ExtractionOptions extraction{};
};

// kappa_{j,0} = -volume * M[c_{j,.,0}]'(0).
KappaResult kappa_j0(const StratumData& stratum, int n, int rk_e,
                     const KappaOptions& options = {});

// Envelope |c_ju0(u)| <= rk n 1.2^d e^{-pi u} for u >= 1.
mellin::DecayBound c_ju0_decay_bound(const StratumData& stratum, int n, int rk_e);

struct StratumCoefficients {
  double gamma = 0.0;
  double kappa = 0.0;
  double kappa_error = 0.0;
};

std::vector<StratumCoefficients> orbifold_coefficients(const OrbifoldData& data,
                                                       const KappaOptions& options = {});

// Manifold-type expansion truncated at k plus the i = 0 strata terms.
std::complex<double> orbifold_expansion_eval(const OrbifoldData& data,
                                             const std::vector<StratumCoefficients>& coeffs,
                                             const torsion::ExpansionTable& manifold_table,
                                             std::int64_t p, int k);

std::complex<double> orbifold_expansion_eval(const OrbifoldData& data,
                                             const torsion::ExpansionTable& manifold_table,
                                             std::int64_t p, int k);

}  // namespace rst::orbifold
