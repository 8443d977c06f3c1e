#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rst/heatmodel.hpp"
#include "rst/orbifold.hpp"

namespace rst::app {

enum class Mode { Expand, Cp1, Orbifold, MellinCheck, Selftest };
enum class OutputFormat { Json, Csv };

std::string to_string(Mode mode);
std::optional<Mode> parse_mode(const std::string& text);
std::optional<OutputFormat> parse_format(const std::string& text);

// Schema violation in a job file, with the offending field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct JobConfig {
  std::optional<Mode> mode;
  std::optional<heat::GeometricData> geometry;
  std::vector<orbifold::StratumData> strata;
  std::vector<std::int64_t> p_values;
  int k = 1;
  OutputFormat format = OutputFormat::Json;
  std::optional<double> tol;
};

// Files ending in .json are read as JSON, anything else as the TOML subset.
nlohmann::json read_config_tree(const std::string& path);

JobConfig config_from_tree(const nlohmann::json& tree);

JobConfig load_config(const std::string& path);

// Checks the fields a given mode needs.
void require_fields(const JobConfig& config, Mode mode);

}  // namespace rst::app
