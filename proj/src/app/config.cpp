#include "rst/app/config.hpp"

#include <fstream>
#include <limits>
#include <set>

#include "rst/app/toml_lite.hpp"

namespace rst::app {

namespace {

using nlohmann::json;

void check_keys(const json& table, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : table.items()) {
    if (!allowed.count(key)) throw ConfigError(where + "." + key, "unknown key");
  }
}

double get_real(const json& table, const std::string& where, const std::string& key) {
  if (!table.contains(key)) throw ConfigError(where + "." + key, "missing required field");
  const json& v = table.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key, "expected a number");
  return v.get<double>();
}

std::optional<double> get_optional_real(const json& table, const std::string& where,
                                        const std::string& key) {
  if (!table.contains(key)) return std::nullopt;
  return get_real(table, where, key);
}

long long get_int(const json& table, const std::string& where, const std::string& key) {
  if (!table.contains(key)) throw ConfigError(where + "." + key, "missing required field");
  const json& v = table.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key, "expected an integer");
  return v.get<long long>();
}

int get_small_int(const json& table, const std::string& where, const std::string& key,
                  long long min) {
  const long long v = get_int(table, where, key);
  if (v < min || v > std::numeric_limits<int>::max()) {
    throw ConfigError(where + "." + key, "must be >= " + std::to_string(min));
  }
  return static_cast<int>(v);
}

heat::GeometricData parse_geometry(const json& t) {
  const std::string w = "geometry";
  if (!t.is_object()) throw ConfigError(w, "expected a table");
  check_keys(t, w, {"n", "rk_e", "vol", "int_c1tm", "int_c1e", "log_det_integral",
                    "theta_equals_omega"});
  heat::GeometricData g;
  g.n = get_small_int(t, w, "n", 1);
  g.rk_e = get_small_int(t, w, "rk_e", 1);
  g.vol = get_real(t, w, "vol");
  if (!(g.vol > 0.0)) throw ConfigError(w + ".vol", "must be > 0");
  g.int_c1tm = get_real(t, w, "int_c1tm");
  g.int_c1e = get_real(t, w, "int_c1e");
  g.log_det_integral = get_optional_real(t, w, "log_det_integral").value_or(0.0);
  if (t.contains("theta_equals_omega")) {
    if (!t["theta_equals_omega"].is_boolean()) {
      throw ConfigError(w + ".theta_equals_omega", "expected true or false");
    }
    g.theta_equals_omega = t["theta_equals_omega"].get<bool>();
  }
  return g;
}

orbifold::StratumData parse_stratum(const json& t, std::size_t index) {
  const std::string w = "strata[" + std::to_string(index) + "]";
  if (!t.is_object()) throw ConfigError(w, "expected a table");
  check_keys(t, w, {"n_j", "m_j", "theta_j", "angles", "volume"});
  orbifold::StratumData s;
  s.n_j = get_small_int(t, w, "n_j", 0);
  s.m_j = get_small_int(t, w, "m_j", 1);
  s.theta_j = get_optional_real(t, w, "theta_j").value_or(0.0);
  s.volume = get_real(t, w, "volume");
  if (!(s.volume > 0.0)) throw ConfigError(w + ".volume", "must be > 0");
  if (!t.contains("angles")) throw ConfigError(w + ".angles", "missing required field");
  const json& a = t["angles"];
  if (a.is_number()) {
    s.angles.push_back(a.get<double>());
  } else if (a.is_array()) {
    for (const json& x : a) {
      if (!x.is_number()) throw ConfigError(w + ".angles", "expected numbers");
      s.angles.push_back(x.get<double>());
    }
  } else {
    throw ConfigError(w + ".angles", "expected a number or an array of numbers");
  }
  return s;
}

std::vector<std::int64_t> parse_p(const json& v) {
  const std::string w = "run.p";
  std::vector<std::int64_t> out;
  auto push = [&](long long p) {
    if (p < 1) throw ConfigError(w, "p values must be >= 1 (got " + std::to_string(p) + ")");
    out.push_back(p);
  };
  if (v.is_number_integer()) {
    push(v.get<long long>());
  } else if (v.is_array()) {
    for (const json& x : v) {
      if (!x.is_number_integer()) throw ConfigError(w, "array entries must be integers");
      push(x.get<long long>());
    }
  } else if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const std::size_t dots = s.find("..");
    if (dots == std::string::npos) throw ConfigError(w, "range must look like \"a..b\"");
    long long a = 0;
    long long b = 0;
    try {
      std::size_t used_a = 0;
      std::size_t used_b = 0;
      const std::string left = s.substr(0, dots);
      const std::string right = s.substr(dots + 2);
      a = std::stoll(left, &used_a);
      b = std::stoll(right, &used_b);
      if (used_a != left.size() || used_b != right.size()) throw std::invalid_argument("junk");
    } catch (const std::exception&) {
      throw ConfigError(w, "range must look like \"a..b\" with integers");
    }
    if (b < a) throw ConfigError(w, "empty range");
    if (b - a > 10'000'000) throw ConfigError(w, "range too long");
    for (long long p = a; p <= b; ++p) push(p);
  } else {
    throw ConfigError(w, "expected an integer, an array of integers or \"a..b\"");
  }
  if (out.empty()) throw ConfigError(w, "no p values");
  return out;
}

}  // namespace

ConfigError::ConfigError(const std::string& field, const std::string& what)
    : std::runtime_error(field + ": " + what), field_(field) {}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Expand: return "expand";
    case Mode::Cp1: return "cp1";
    case Mode::Orbifold: return "orbifold";
    case Mode::MellinCheck: return "mellin-check";
    case Mode::Selftest: return "selftest";
  }
  return "?";
}

std::optional<Mode> parse_mode(const std::string& text) {
  for (Mode m : {Mode::Expand, Mode::Cp1, Mode::Orbifold, Mode::MellinCheck, Mode::Selftest}) {
    if (text == to_string(m)) return m;
  }
  return std::nullopt;
}

std::optional<OutputFormat> parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  return std::nullopt;
}

nlohmann::json read_config_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("input", "cannot open '" + path + "'");
  const bool is_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  if (is_json) {
    try {
      return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("input", std::string("JSON parse error: ") + e.what());
    }
  }
  try {
    return parse_toml_lite(in, path);
  } catch (const ParseError& e) {
    throw ConfigError("input", e.what());
  }
}

JobConfig config_from_tree(const nlohmann::json& tree) {
  if (!tree.is_object()) throw ConfigError("input", "top level must be a table");
  check_keys(tree, "input", {"geometry", "strata", "run"});
  JobConfig c;
  if (tree.contains("geometry")) c.geometry = parse_geometry(tree["geometry"]);
  if (tree.contains("strata")) {
    const json& s = tree["strata"];
    if (!s.is_array()) throw ConfigError("strata", "expected [[strata]] entries");
    for (std::size_t i = 0; i < s.size(); ++i) c.strata.push_back(parse_stratum(s[i], i));
  }
  if (tree.contains("run")) {
    const json& r = tree["run"];
    if (!r.is_object()) throw ConfigError("run", "expected a table");
    check_keys(r, "run", {"mode", "p", "k", "format", "tol"});
    if (r.contains("mode")) {
      if (!r["mode"].is_string()) throw ConfigError("run.mode", "expected a string");
      c.mode = parse_mode(r["mode"].get<std::string>());
      if (!c.mode) throw ConfigError("run.mode", "unknown mode '" + r["mode"].get<std::string>() + "'");
    }
    if (r.contains("p")) c.p_values = parse_p(r["p"]);
    if (r.contains("k")) c.k = get_small_int(r, "run", "k", 0);
    if (r.contains("format")) {
      if (!r["format"].is_string()) throw ConfigError("run.format", "expected \"json\" or \"csv\"");
      const auto f = parse_format(r["format"].get<std::string>());
      if (!f) throw ConfigError("run.format", "expected \"json\" or \"csv\"");
      c.format = *f;
    }
    if (r.contains("tol")) {
      c.tol = get_real(r, "run", "tol");
      if (!(*c.tol > 0.0)) throw ConfigError("run.tol", "must be > 0");
    }
  }
  return c;
}

JobConfig load_config(const std::string& path) { return config_from_tree(read_config_tree(path)); }

void require_fields(const JobConfig& config, Mode mode) {
  switch (mode) {
    case Mode::Expand:
      if (!config.geometry) throw ConfigError("geometry", "required for mode expand");
      if (config.p_values.empty()) throw ConfigError("run.p", "required for mode expand");
      break;
    case Mode::Cp1:
      if (config.p_values.empty()) throw ConfigError("run.p", "required for mode cp1");
      break;
    case Mode::Orbifold:
      if (!config.geometry) throw ConfigError("geometry", "required for mode orbifold");
      if (config.strata.empty()) throw ConfigError("strata", "required for mode orbifold");
      if (config.p_values.empty()) throw ConfigError("run.p", "required for mode orbifold");
      break;
    case Mode::MellinCheck:
    case Mode::Selftest:
      break;
  }
}

}  // namespace rst::app
