#include "rst/app/app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rst/checks.hpp"
#include "rst/cp1.hpp"
#include "rst/errors.hpp"
#include "rst/heatmodel.hpp"
#include "rst/mellin.hpp"
#include "rst/orbifold.hpp"
#include "rst/torsion.hpp"

namespace rst::app {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// RFC 4180 quoting for text cells.
std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

ordered jnum(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

// Rows of named cells, rendered either as a CSV table or as a JSON array.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<ordered> row) { rows_.push_back(std::move(row)); }

  void write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << "\n";
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "");
        const ordered& cell = row[i];
        if (cell.is_null()) out << "nan";
        else if (cell.is_number_float()) out << num(cell.get<double>());
        else if (cell.is_string()) out << csv_text(cell.get<std::string>());
        else out << cell.dump();
      }
      out << "\n";
    }
  }

  ordered to_json() const {
    ordered arr = ordered::array();
    for (const auto& row : rows_) {
      ordered obj = ordered::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = row[i];
      arr.push_back(obj);
    }
    return arr;
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<ordered>> rows_;
};

ordered geometry_json(const heat::GeometricData& g) {
  return {{"n", g.n},
          {"rk_e", g.rk_e},
          {"vol", g.vol},
          {"int_c1tm", g.int_c1tm},
          {"int_c1e", g.int_c1e},
          {"log_det_integral", g.log_det_integral},
          {"theta_equals_omega", g.theta_equals_omega}};
}

ordered table_json(const torsion::ExpansionTable& t) {
  ordered terms = ordered::array();
  for (const auto& term : t.terms) {
    terms.push_back({{"order", term.order}, {"alpha", term.alpha}, {"beta", term.beta}});
  }
  return {{"n", t.n}, {"terms", terms}};
}

void emit(const ordered& doc, const Table& rows, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Csv) {
    rows.write_csv(out);
  } else {
    out << doc.dump(2) << "\n";
  }
}

int run_expand(const JobConfig& c, std::ostream& out) {
  const heat::GeometricData& g = *c.geometry;
  const torsion::ExpansionTable table = torsion::build_expansion_table(g);
  mellin::MellinOptions opt;
  if (c.tol) opt.abs_tol = *c.tol;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  torsion::MellinRouteResult route{nan, nan, nan, nan};
  if (g.theta_equals_omega) route = torsion::alpha1_beta1_via_mellin(g, opt);

  auto coeff = [&](int order, bool alpha) {
    if (order > table.max_order()) return nan;
    return alpha ? table.terms[order].alpha : table.terms[order].beta;
  };
  Table rows({"p", "k", "prediction", "alpha0", "beta0", "alpha1", "beta1", "alpha1_mellin",
              "alpha1_mellin_error", "beta1_mellin", "beta1_mellin_error"});
  for (std::int64_t p : c.p_values) {
    rows.add({p, c.k, torsion::expansion_eval(table, p, c.k), jnum(coeff(0, true)),
              jnum(coeff(0, false)), jnum(coeff(1, true)), jnum(coeff(1, false)),
              jnum(route.alpha), jnum(route.alpha_error), jnum(route.beta),
              jnum(route.beta_error)});
  }
  ordered doc;
  doc["mode"] = "expand";
  doc["geometry"] = geometry_json(g);
  doc["table"] = table_json(table);
  doc["mellin_route"] = {{"alpha1", jnum(route.alpha)},
                         {"alpha1_error", jnum(route.alpha_error)},
                         {"beta1", jnum(route.beta)},
                         {"beta1_error", jnum(route.beta_error)}};
  doc["rows"] = rows.to_json();
  emit(doc, rows, c.format, out);
  return kSuccess;
}

int run_cp1(const JobConfig& c, std::ostream& out) {
  Table rows({"p", "two_log_T", "covolume", "asymptotic_prediction", "residual", "p_residual",
              "arithmetic_degree", "arithmetic_degree_closed"});
  for (std::int64_t p : c.p_values) {
    const cp1::Cp1Report r = cp1::cp1_report(p);
    rows.add({r.p, r.two_log_T, r.covolume, jnum(r.asymptotic_prediction), jnum(r.residual),
              jnum(static_cast<double>(p) * r.residual), r.arithmetic_degree,
              r.arithmetic_degree_closed});
  }
  ordered doc;
  doc["mode"] = "cp1";
  doc["torsion_constant"] = cp1::torsion_constant();
  doc["covolume_constant"] = cp1::covolume_constant();
  doc["rows"] = rows.to_json();
  emit(doc, rows, c.format, out);
  return kSuccess;
}

int run_orbifold(const JobConfig& c, std::ostream& out) {
  orbifold::OrbifoldData data{*c.geometry, c.strata};
  data.validate();
  orbifold::KappaOptions opt;
  if (c.tol) opt.mellin.abs_tol = *c.tol;
  const std::vector<orbifold::StratumCoefficients> coeffs = orbifold::orbifold_coefficients(data, opt);
  const torsion::ExpansionTable table = torsion::build_expansion_table(data.geom);

  ordered strata = ordered::array();
  for (std::size_t j = 0; j < data.strata.size(); ++j) {
    const orbifold::StratumData& s = data.strata[j];
    const int n = data.geom.n;
    double cj = std::numeric_limits<double>::quiet_NaN();
    if (s.codim(n) == 1) cj = orbifold::c_j_closed(s, n, data.geom.rk_e);
    strata.push_back({{"n_j", s.n_j},
                      {"m_j", s.m_j},
                      {"theta_j", s.theta_j},
                      {"angles", s.angles},
                      {"volume", s.volume},
                      {"c_ju0_at_0", orbifold::c_ju0(s, n, data.geom.rk_e, 0.0)},
                      {"c_j_closed", jnum(cj)},
                      {"gamma_j0", coeffs[j].gamma},
                      {"kappa_j0", coeffs[j].kappa},
                      {"kappa_j0_error", coeffs[j].kappa_error}});
  }
  Table rows({"p", "k", "real", "imag", "abs_imag", "error_estimate", "manifold_part"});
  for (std::int64_t p : c.p_values) {
    const std::complex<double> v = orbifold::orbifold_expansion_eval(data, coeffs, table, p, c.k);
    // Only the kappa constants are quadrature-derived.
    double err = 0.0;
    for (std::size_t j = 0; j < data.strata.size(); ++j) {
      const orbifold::StratumData& s = data.strata[j];
      err += std::pow(static_cast<double>(p), s.n_j) / s.m_j * coeffs[j].kappa_error;
    }
    rows.add({p, c.k, v.real(), v.imag(), std::abs(v.imag()), err,
              torsion::expansion_eval(table, p, c.k)});
  }
  ordered doc;
  doc["mode"] = "orbifold";
  doc["geometry"] = geometry_json(data.geom);
  doc["table"] = table_json(table);
  doc["strata"] = strata;
  doc["rows"] = rows.to_json();
  emit(doc, rows, c.format, out);
  return kSuccess;
}

int run_mellin_check(const JobConfig& c, std::ostream& out) {
  const double gate = c.tol.value_or(1e-8);
  Table rows({"g", "quantity", "closed", "numeric", "error_estimate", "deviation", "pass"});
  bool all = true;
  auto add = [&](const std::string& g, const std::string& q, double closed, double numeric,
                 double err) {
    const double dev = std::abs(closed - numeric);
    const bool ok = dev <= gate;
    all = all && ok;
    rows.add({g, q, closed, numeric, jnum(err), dev, ok});
  };
  for (heat::GFunctionId id : heat::kAllGFunctions) {
    const std::string name = heat::to_string(id);
    auto f = [id](double u) { return heat::g_eval(id, u); };
    const mellin::SingularExpansion sing = heat::g_small_u_coeffs(id);
    add(name, "M(0)", heat::g_mellin_closed(id, 0.0), mellin::mellin_at_zero(f, sing), 0.0);
    const mellin::MellinResult r = mellin::mellin_derivative_at_zero(f, sing, heat::g_decay_bound(id));
    add(name, "M'(0)", heat::g_mellin_closed_derivative_at_zero(id), r.derivative_at_zero,
        r.error_estimate);
    const mellin::ExtractedExpansion ex = mellin::extract_small_u_coefficients(f, sing.lowest_order, 0);
    for (const auto& [order, coeff] : sing.coeffs) {
      if (order > ex.highest_order) continue;
      add(name, "coeff[" + std::to_string(order) + "]", coeff, ex.expansion.coeff(order),
          ex.errors.at(order));
    }
  }
  ordered doc;
  doc["mode"] = "mellin-check";
  doc["tolerance"] = gate;
  doc["rows"] = rows.to_json();
  doc["pass"] = all;
  emit(doc, rows, c.format, out);
  return all ? kSuccess : kToleranceFailure;
}

int run_selftest(const JobConfig& c, std::ostream& out) {
  Table rows({"id", "check", "part", "deviation", "tolerance", "pass", "seconds", "note"});
  bool all = true;
  ordered checks = ordered::array();
  for (const checks::CheckResult& r : checks::run_all()) {
    all = all && r.passed;
    for (const checks::SubCheck& s : r.parts) {
      rows.add({r.id, r.name, s.name, jnum(s.deviation), s.tolerance, s.passed, r.seconds, s.note});
    }
    checks.push_back({{"id", r.id},
                      {"check", r.name},
                      {"pass", r.passed},
                      {"seconds", r.seconds},
                      {"time_limit", r.time_limit}});
  }
  ordered doc;
  doc["mode"] = "selftest";
  doc["checks"] = checks;
  doc["parts"] = rows.to_json();
  doc["pass"] = all;
  emit(doc, rows, c.format, out);
  return all ? kSuccess : kToleranceFailure;
}

}  // namespace

int run(Mode mode, const JobConfig& config, std::ostream& out) {
  require_fields(config, mode);
  switch (mode) {
    case Mode::Expand: return run_expand(config, out);
    case Mode::Cp1: return run_cp1(config, out);
    case Mode::Orbifold: return run_orbifold(config, out);
    case Mode::MellinCheck: return run_mellin_check(config, out);
    case Mode::Selftest: return run_selftest(config, out);
  }
  return kConfigError;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App cli{"Asymptotic coefficients of Ray-Singer analytic torsion for high tensor powers"};
  cli.require_subcommand(1);
  struct Options {
    std::string input;
    std::string output;
    std::string format;
    double tol = 0.0;
  };
  Options opt;
  auto add_common = [&opt](CLI::App* sub, bool input_required) {
    auto* in = sub->add_option("--input,-i", opt.input, "job file (TOML subset or .json)");
    if (input_required) in->required();
    sub->add_option("--output,-o", opt.output, "output file (default: stdout)");
    sub->add_option("--format,-f", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tol", opt.tol, "engine tolerance / deviation gate")
        ->check(CLI::PositiveNumber);
  };
  add_common(cli.add_subcommand("expand", "expansion coefficients and predictions"), true);
  add_common(cli.add_subcommand("cp1", "exact CP1 torsion, covolume and asymptotics"), true);
  add_common(cli.add_subcommand("orbifold", "orbifold strata coefficients and evaluations"), true);
  add_common(cli.add_subcommand("mellin-check", "closed vs numeric Mellin data of g-functions"),
             false);
  add_common(cli.add_subcommand("selftest", "run every oracle comparison"), false);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }
  const Mode mode = *parse_mode(cli.get_subcommands().front()->get_name());

  try {
    JobConfig config;
    if (!opt.input.empty()) config = load_config(opt.input);
    if (config.mode && *config.mode != mode) {
      throw ConfigError("run.mode", "file says '" + to_string(*config.mode) +
                                        "' but the command line asks for '" + to_string(mode) + "'");
    }
    if (!opt.format.empty()) config.format = *parse_format(opt.format);
    if (opt.tol > 0.0) config.tol = opt.tol;

    std::ostringstream buffer;
    const int code = run(mode, config, buffer);
    if (opt.output.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(opt.output);
      if (!file) throw ConfigError("output", "cannot write '" + opt.output + "'");
      file << buffer.str();
    }
    if (code == kToleranceFailure) err << "error: tolerance check failed\n";
    return code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InputError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const PreconditionError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace rst::app
