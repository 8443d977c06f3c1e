#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include <json.hpp>

// Reader for the small TOML subset used by job files: comments, [table],
// [[array.of.tables]] (one level), key = value with integers, floats,
// booleans, basic strings and (possibly multi-line) arrays of those.
namespace rst::app {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_ = 0;
};

nlohmann::json parse_toml_lite(std::istream& in, const std::string& source_name);

}  // namespace rst::app
