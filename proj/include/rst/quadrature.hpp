#pragma once

#include <functional>

namespace rst::quad {

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

using Integrand = std::function<double(double)>;

// One 15-point Gauss-Kronrod panel on [a, b]; the error is |K15 - G7|.
Estimate gauss_kronrod_15(const Integrand& f, double a, double b);

// Recursive bisection until every panel meets its share of abs_tol or the
// depth limit is hit. Fixed, data-independent splitting order, so results do
// not depend on scheduling.
//
// noise is an absolute bound on the rounding error of individual f values; a
// panel whose error estimate is within a few times noise * width is accepted,
// since bisecting it further only resolves rounding.
Estimate adaptive(const Integrand& f, double a, double b, double abs_tol, int max_depth = 30,
                  double noise = 0.0);

}  // namespace rst::quad
