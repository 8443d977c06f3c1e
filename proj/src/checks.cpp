#include "rst/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "rst/cp1.hpp"
#include "rst/heatmodel.hpp"
#include "rst/mellin.hpp"
#include "rst/oracle.hpp"
#include "rst/orbifold.hpp"
#include "rst/specfun.hpp"
#include "rst/torsion.hpp"

namespace rst::checks {

namespace {

constexpr double kPi = std::numbers::pi;

SubCheck part(std::string name, double deviation, double tolerance, std::string note = {}) {
  SubCheck s;
  s.name = std::move(name);
  s.deviation = deviation;
  s.tolerance = tolerance;
  s.passed = std::isfinite(deviation) && deviation <= tolerance;
  s.note = std::move(note);
  return s;
}

template <typename Body>
CheckResult timed(int id, std::string name, double time_limit, Body&& body) {
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  r.time_limit = time_limit;
  const auto start = std::chrono::steady_clock::now();
  body(r.parts);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.passed = !r.parts.empty() &&
             std::all_of(r.parts.begin(), r.parts.end(), [](const SubCheck& s) { return s.passed; }) &&
             (time_limit <= 0.0 || r.seconds < time_limit);
  return r;
}

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(10);
  o << x;
  return o.str();
}

heat::GeometricData to_geometry(const RandomGeometry& g) {
  heat::GeometricData d;
  d.n = g.n;
  d.rk_e = g.rk_e;
  d.vol = g.vol;
  d.int_c1tm = g.int_c1tm;
  d.int_c1e = g.int_c1e;
  return d;
}

orbifold::StratumData stratum(int n_j, std::vector<double> angles) {
  orbifold::StratumData s;
  s.n_j = n_j;
  s.angles = std::move(angles);
  return s;
}

}  // namespace

double CheckResult::worst_ratio() const {
  double w = 0.0;
  for (const SubCheck& s : parts) w = std::max(w, s.tolerance > 0.0 ? s.deviation / s.tolerance : 0.0);
  return w;
}

std::vector<RandomGeometry> random_geometries(unsigned long long seed, int count) {
  std::mt19937_64 rng(seed);
  // Explicit 53-bit mapping so the sequence does not depend on the library's
  // distribution implementations.
  auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  std::vector<RandomGeometry> out;
  for (int i = 0; i < count; ++i) {
    RandomGeometry g;
    g.n = 1 + static_cast<int>(rng() % 4);
    g.rk_e = 1 + static_cast<int>(rng() % 3);
    g.vol = uniform(0.5, 3.0);
    g.int_c1tm = uniform(-6.0, 6.0);
    g.int_c1e = uniform(-3.0, 3.0);
    out.push_back(g);
  }
  return out;
}

CheckResult cp1_arithmetic_identity() {
  return timed(1, "CP1 arithmetic-degree identity, p = 1..2000", 5.0, [](auto& parts) {
    double worst = 0.0;
    std::int64_t at = 1;
    for (std::int64_t p = 1; p <= 2000; ++p) {
      const cp1::ArithmeticDegree d = cp1::arithmetic_degree_check(p);
      const double dev = std::abs(d.lhs - d.rhs);
      if (dev > worst) {
        worst = dev;
        at = p;
      }
    }
    parts.push_back(part("max |lhs - rhs|", worst, 1e-9, "worst at p = " + std::to_string(at)));
  });
}

CheckResult cp1_asymptotics() {
  return timed(2, "CP1 torsion asymptotics", 30.0, [](auto& parts) {
    std::vector<std::int64_t> ps;
    for (std::int64_t p = 500; p <= 50000; p *= 2) ps.push_back(p);
    ps.push_back(50000);
    double lo = 1e300, hi = -1e300;
    for (std::int64_t p : ps) {
      const double scaled = p * cp1::cp1_residual(p);
      lo = std::min(lo, scaled);
      hi = std::max(hi, scaled);
    }
    parts.push_back(part("max |p residual| (bound 1)", std::max(std::abs(lo), std::abs(hi)), 1.0,
                         "p*residual in [" + fmt(lo) + ", " + fmt(hi) + "]"));
    double worst_ratio_dev = 0.0;
    double rlo = 1e300, rhi = -1e300;
    for (std::int64_t p = 500; 2 * p <= 50000; p *= 2) {
      const double ratio = cp1::cp1_residual(2 * p) / cp1::cp1_residual(p);
      rlo = std::min(rlo, ratio);
      rhi = std::max(rhi, ratio);
      worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 0.5));
    }
    parts.push_back(part("|residual(2p)/residual(p) - 0.5|", worst_ratio_dev, 0.1,
                         "ratios in [" + fmt(rlo) + ", " + fmt(rhi) + "]"));
    const RichardsonResult c = cp1::extrapolate_torsion_constant(500, 6);
    parts.push_back(part("extrapolated constant", std::abs(c.value - cp1::torsion_constant()), 1e-6,
                         "extrapolated " + fmt(c.value) + " closed " + fmt(cp1::torsion_constant())));
  });
}

CheckResult two_route_coefficients() {
  return timed(3, "alpha1/beta1 closed vs Mellin route", 10.0, [](auto& parts) {
    std::vector<std::pair<std::string, heat::GeometricData>> cases;
    cases.emplace_back("CP1", cp1::cp1_geometry());
    int i = 0;
    for (const RandomGeometry& g : random_geometries(kGeometrySeed, 5)) {
      cases.emplace_back("random#" + std::to_string(i++), to_geometry(g));
    }
    for (const auto& [label, geom] : cases) {
      const torsion::CoefficientPair closed = torsion::alpha1_beta1(geom);
      const torsion::MellinRouteResult m = torsion::alpha1_beta1_via_mellin(geom);
      parts.push_back(part(label + " alpha1", std::abs(closed.alpha - m.alpha), 1e-7));
      parts.push_back(part(label + " beta1", std::abs(closed.beta - m.beta), 1e-7));
    }
  });
}

CheckResult g_function_suite() {
  return timed(4, "g-function Mellin values and small-u coefficients", 0.0, [](auto& parts) {
    for (heat::GFunctionId id : heat::kAllGFunctions) {
      const std::string name = heat::to_string(id);
      auto g = [id](double u) { return heat::g_eval(id, u); };
      const mellin::SingularExpansion sing = heat::g_small_u_coeffs(id);
      const double m0 = mellin::mellin_at_zero(g, sing);
      parts.push_back(part(name + " M(0)", std::abs(m0 - heat::g_mellin_closed(id, 0.0)), 1e-8));
      const mellin::MellinResult r =
          mellin::mellin_derivative_at_zero(g, sing, heat::g_decay_bound(id));
      parts.push_back(part(name + " M'(0)",
                           std::abs(r.derivative_at_zero - heat::g_mellin_closed_derivative_at_zero(id)),
                           1e-8));
      const mellin::ExtractedExpansion ex =
          mellin::extract_small_u_coefficients(g, sing.lowest_order, 0);
      double worst = ex.highest_order < 0 ? INFINITY : 0.0;
      for (const auto& [order, c] : sing.coeffs) {
        if (order > ex.highest_order) continue;
        worst = std::max(worst, std::abs(ex.expansion.coeff(order) - c));
      }
      parts.push_back(part(name + " small-u coefficients", worst, 1e-6));
    }
  });
}

CheckResult supertrace_oracle() {
  return timed(5, "supertrace closed forms vs enumeration", 0.0, [](auto& parts) {
    double worst_id = 0.0;
    double worst_endo = 0.0;
    for (int n = 1; n <= 5; ++n) {
      for (double a : {0.1, 0.7, 2.0}) {
        for (int rk = 1; rk <= 3; ++rk) {
          worst_id = std::max(worst_id, std::abs(heat::strace_closed(n, rk, a) -
                                                 heat::strace_bruteforce(n, a, {}, rk)));
        }
        std::vector<double> diag;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
          diag.push_back(0.3 + 0.7 * i - 0.05 * i * i);
          sum += diag.back();
        }
        worst_endo = std::max(worst_endo, std::abs(heat::strace_endo_closed(n, a, sum) -
                                                   heat::strace_bruteforce(n, a, diag)));
      }
    }
    parts.push_back(part("Str[N e^{-aN}]", worst_id, 1e-12));
    parts.push_back(part("Str[N A e^{-aN}]", worst_endo, 1e-12));
  });
}

CheckResult duhamel_moment_oracle() {
  return timed(6, "Duhamel moment integrals closed vs quadrature", 60.0, [](auto& parts) {
    for (heat::MomentKind kind :
         {heat::MomentKind::UNIT, heat::MomentKind::ZJ2, heat::MomentKind::ZI2ZJ2}) {
      double worst = 0.0;
      for (double u : {0.25, 1.0, 4.0}) {
        const double closed = heat::moment_integral_closed(1, u, kind);
        const quad::Estimate q = heat::moment_integral_quadrature(1, u, kind);
        worst = std::max(worst, std::abs(closed - q.value));
      }
      parts.push_back(part(heat::to_string(kind) + " (n = 1)", worst, 1e-6));
    }
  });
}

CheckResult orbifold_suite() {
  return timed(7, "orbifold strata terms", 0.0, [](auto& parts) {
    struct Case {
      orbifold::StratumData s;
      int n;
      double u;
    };
    const std::vector<Case> grid = {
        {stratum(0, {kPi}), 1, 1.0},
        {stratum(0, {kPi / 2}), 1, 0.5},
        {stratum(0, {kPi / 3}), 1, 0.1},
        {stratum(1, {2 * kPi / 3}), 2, 5.0},
        {stratum(0, {2 * kPi / 3, 2 * kPi / 3}), 2, 2.0},
        {stratum(0, {kPi / 2, kPi}), 2, 0.3},
    };
    double worst = 0.0;
    for (const Case& c : grid) {
      const double closed = orbifold::c_ju0(c.s, c.n, 1, c.u);
      const orbifold::FiberIntegral q = orbifold::c_ju0_quadrature_oracle(c.s, c.n, 1, c.u);
      worst = std::max(worst, std::abs(closed - q.value));
    }
    parts.push_back(part("c_ju0 vs fiber quadrature", worst, 1e-6));

    double limit = 0.0;
    for (const auto& s : {stratum(0, {2 * kPi / 3, 2 * kPi / 3}), stratum(0, {kPi / 2, kPi})}) {
      limit = std::max({limit, std::abs(orbifold::c_ju0(s, 2, 1, 0.0)),
                        std::abs(orbifold::c_ju0(s, 2, 1, 1e-12))});
    }
    {
      const auto s3 = stratum(0, {kPi / 2, kPi, 2 * kPi / 3});
      limit = std::max({limit, std::abs(orbifold::c_ju0(s3, 3, 1, 0.0)),
                        std::abs(orbifold::c_ju0(s3, 3, 1, 1e-12))});
    }
    parts.push_back(part("codim >= 2 limit at u -> 0", limit, 1e-10));

    std::vector<double> ratios;
    for (double phi : {kPi / 3, kPi / 2, 2 * kPi / 3, kPi}) {
      const auto s = stratum(0, {phi});
      ratios.push_back(orbifold::c_ju0(s, 1, 1, 0.0) / orbifold::c_j_closed(s, 1, 1));
    }
    const double mean = (ratios[0] + ratios[1] + ratios[2] + ratios[3]) / 4.0;
    double spread = 0.0;
    for (double r : ratios) spread = std::max(spread, std::abs(r / mean - 1.0));
    parts.push_back(part("codim-1 ratio c_ju0(0)/c_j constant", spread, 1e-8,
                         "ratio = " + fmt(mean)));

    orbifold::KappaOptions fine;
    fine.mellin.abs_tol = 1e-13;
    fine.extraction.u0 = 0.125;
    fine.extraction.levels = 10;
    double kappa_dev = 0.0;
    std::string note;
    for (const auto& [s, n] : {std::pair{stratum(0, {kPi}), 1}, std::pair{stratum(0, {kPi / 2}), 1},
                               std::pair{stratum(0, {2 * kPi / 3, 2 * kPi / 3}), 2}}) {
      const orbifold::KappaResult a = orbifold::kappa_j0(s, n, 1);
      const orbifold::KappaResult b = orbifold::kappa_j0(s, n, 1, fine);
      kappa_dev = std::max(kappa_dev, std::abs(a.value - b.value));
      if (note.empty()) note = "kappa(phi = pi) = " + fmt(a.value);
    }
    parts.push_back(part("kappa_j0 under refinement", kappa_dev, 1e-6, note));
  });
}

CheckResult special_function_gates() {
  return timed(8, "special-function gates", 0.0, [](auto& parts) {
    const double fd = oracle::zeta_derivative_finite_difference(-1.0).value;
    const double fe = oracle::zeta_derivative_functional_equation(-1);
    const double lib = specfun::zeta_derivative(-1.0);
    parts.push_back(part("zeta'(-1) oracles agree", std::abs(fd - fe), 1e-9,
                         "zeta'(-1) = " + fmt(lib)));
    parts.push_back(part("zeta'(-1) library vs oracles",
                         std::max(std::abs(lib - fd), std::abs(lib - fe)), 1e-9));
    double fe_res = 0.0;
    for (double s : {-0.5, -2.5, -3.5}) {
      fe_res = std::max(fe_res, std::abs(oracle::functional_equation_residual(s)));
    }
    parts.push_back(part("functional-equation residual", fe_res, 1e-9));
    const double det = mellin::regularized_det_from_zeta(specfun::riemann_zeta(0.0),
                                                         specfun::zeta_derivative(0.0));
    parts.push_back(part("det(k) = sqrt(2 pi)", std::abs(det - std::sqrt(2.0 * kPi)), 1e-9));
  });
}

CheckResult covolume_asymptotics() {
  return timed(9, "CP1 covolume asymptotics", 0.0, [](auto& parts) {
    const std::vector<std::int64_t> ps = {500, 1000, 2000, 4000, 8000, 16000, 20000};
    double lo = 1e300, hi = -1e300;
    for (std::int64_t p : ps) {
      const double scaled = p * cp1::covolume_residual(p);
      lo = std::min(lo, scaled);
      hi = std::max(hi, scaled);
    }
    const double spread = (hi - lo) / std::max(std::abs(lo), std::abs(hi));
    parts.push_back(part("relative spread of p * difference", spread, 1e-2,
                         "p*difference in [" + fmt(lo) + ", " + fmt(hi) + "]"));
    double ratio_dev = 0.0;
    for (std::int64_t p = 500; p <= 10000; p *= 2) {
      ratio_dev = std::max(
          ratio_dev, std::abs(cp1::covolume_residual(2 * p) / cp1::covolume_residual(p) - 0.5));
    }
    parts.push_back(part("|difference(2p)/difference(p) - 0.5|", ratio_dev, 0.1));
    const RichardsonResult c = cp1::extrapolate_covolume_constant(500, 6);
    parts.push_back(part("extrapolated constant", std::abs(c.value - cp1::covolume_constant()), 1e-6,
                         "extrapolated " + fmt(c.value) + " closed " + fmt(cp1::covolume_constant())));
  });
}

std::vector<CheckResult> run_all() {
  return {cp1_arithmetic_identity(), cp1_asymptotics(),   two_route_coefficients(),
          g_function_suite(),        supertrace_oracle(), duhamel_moment_oracle(),
          orbifold_suite(),          special_function_gates(), covolume_asymptotics()};
}

}  // namespace rst::checks
