#pragma once

#include <cstdint>
#include <vector>

#include "rst/heatmodel.hpp"
#include "rst/mellin.hpp"

// Coefficients of the large-p expansion
//   -2 log T(L^p (x) E) = sum_i p^{n-i} (alpha_i log p + beta_i) + ...
// from integrated geometric data, by closed formulas and by the Mellin route.
namespace rst::torsion {

using heat::GeometricData;

struct ExpansionTerm {
  int order = 0;
  double alpha = 0.0;
  double beta = 0.0;
};

struct ExpansionTable {
  int n = 1;
  std::vector<ExpansionTerm> terms;  // orders 0, 1, 2, ... without gaps

  int max_order() const;
  void validate() const;
};

struct CoefficientPair {
  double alpha = 0.0;
  double beta = 0.0;
};

// alpha_0 = n rk/2 vol, beta_0 = rk/2 int log det(R^L/2pi). Valid for any metric.
CoefficientPair alpha0_beta0(const GeometricData& geom);

// Closed alpha_1, beta_1 for the Kaehler normalization; DomainError otherwise.
CoefficientPair alpha1_beta1(const GeometricData& geom);

struct MellinRouteResult {
  double alpha = 0.0;
  double beta = 0.0;
  double alpha_error = 0.0;
  double beta_error = 0.0;
};

// alpha_1 as the u^0 coefficient of A(u) (numerically extracted) and
// beta_1 = -M[A]'(0) from the Mellin engine.
MellinRouteResult alpha1_beta1_via_mellin(const GeometricData& geom,
                                          const mellin::MellinOptions& mellin_options = {},
                                          const mellin::ExtractionOptions& extraction = {});

// Orders 0 and 1 (order 1 only under the Kaehler normalization).
ExpansionTable build_expansion_table(const GeometricData& geom);

// sum_{i=0}^{k} p^{n-i} (alpha_i log p + beta_i); p >= 2.
double expansion_eval(const ExpansionTable& table, std::int64_t p, int k);

}  // namespace rst::torsion
