#include "rst/torsion.hpp"

#include <cmath>
#include <string>

#include "rst/errors.hpp"
#include "rst/specfun.hpp"

namespace rst::torsion {

int ExpansionTable::max_order() const { return terms.empty() ? -1 : terms.back().order; }

void ExpansionTable::validate() const {
  if (n < 1) throw InputError("ExpansionTable: n must be >= 1");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].order != static_cast<int>(i)) {
      throw InputError("ExpansionTable: orders must be 0, 1, 2, ... in sequence");
    }
  }
}

CoefficientPair alpha0_beta0(const GeometricData& geom) {
  geom.validate();
  return {0.5 * geom.n * geom.rk_e * geom.vol, 0.5 * geom.rk_e * geom.log_det_integral};
}

CoefficientPair alpha1_beta1(const GeometricData& geom) {
  geom.validate();
  if (!geom.theta_equals_omega) {
    throw DomainError("alpha1_beta1: closed formulas need the Kaehler normalization theta = omega");
  }
  const double n = geom.n;
  const double rk = geom.rk_e;
  const double alpha = (3.0 * n + 1.0) * rk / 12.0 * geom.int_c1tm + 0.5 * n * geom.int_c1e;
  const double bracket =
      24.0 * specfun::zeta_prime_at_minus_one() + 2.0 * specfun::log_two_pi() + 7.0;
  const double beta = rk / 24.0 * bracket * geom.int_c1tm + 0.5 * geom.int_c1e;
  return {alpha, beta};
}

MellinRouteResult alpha1_beta1_via_mellin(const GeometricData& geom,
                                          const mellin::MellinOptions& mellin_options,
                                          const mellin::ExtractionOptions& extraction) {
  geom.validate();
  if (!geom.theta_equals_omega) {
    throw DomainError("alpha1_beta1_via_mellin: requires the Kaehler normalization");
  }
  auto A = [&geom](double u) { return heat::A_of_u(geom, u); };

  const mellin::ExtractedExpansion extracted =
      mellin::extract_small_u_coefficients(A, -2, 0, extraction);
  if (extracted.highest_order < 0) {
    throw PreconditionError("alpha1_beta1_via_mellin: u^0 coefficient not extractable: " +
                            extracted.note);
  }

  mellin::MellinOptions options = mellin_options;
  if (!options.term_scale) {
    options.term_scale = [&geom](double u) { return heat::A_term_scale(geom, u); };
  }
  const mellin::MellinResult m = mellin::mellin_derivative_at_zero(
      A, heat::A_small_u_coeffs(geom), heat::A_decay_bound(geom), options);

  MellinRouteResult out;
  out.alpha = extracted.expansion.coeff(0);
  out.alpha_error = extracted.errors.at(0);
  out.beta = -m.derivative_at_zero;
  out.beta_error = m.error_estimate;
  return out;
}

ExpansionTable build_expansion_table(const GeometricData& geom) {
  ExpansionTable table;
  table.n = geom.n;
  const CoefficientPair c0 = alpha0_beta0(geom);
  table.terms.push_back({0, c0.alpha, c0.beta});
  if (geom.theta_equals_omega) {
    const CoefficientPair c1 = alpha1_beta1(geom);
    table.terms.push_back({1, c1.alpha, c1.beta});
  }
  return table;
}

double expansion_eval(const ExpansionTable& table, std::int64_t p, int k) {
  table.validate();
  if (p < 2) throw DomainError("expansion_eval: requires p >= 2");
  if (k < 0 || k > table.max_order()) {
    throw InputError("expansion_eval: truncation order " + std::to_string(k) +
                     " outside the table (max " + std::to_string(table.max_order()) + ")");
  }
  const double x = static_cast<double>(p);
  const double lp = std::log(x);
  double total = 0.0;
  for (int i = 0; i <= k; ++i) {
    const ExpansionTerm& t = table.terms[i];
    total += std::pow(x, table.n - i) * (t.alpha * lp + t.beta);
  }
  return total;
}

}  // namespace rst::torsion
