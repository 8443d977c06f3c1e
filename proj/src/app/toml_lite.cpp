#include "rst/app/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace rst::app {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Drops a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  }
  return true;
}

class ValueParser {
 public:
  ValueParser(const std::string& text, const std::string& source, int line)
      : text_(text), source_(source), line_(line) {}

  json parse() {
    json v = value();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing characters");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_, what); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  json value() {
    skip_space();
    if (pos_ >= text_.size()) fail("missing value");
    const char c = text_[pos_];
    if (c == '"') return string_value();
    if (c == '[') return array_value();
    if (text_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      return true;
    }
    if (text_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      return false;
    }
    return number_value();
  }

  json string_value() {
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        const char e = text_[pos_ + 1];
        if (e == 'n') out += '\n';
        else if (e == 't') out += '\t';
        else out += e;
        pos_ += 2;
        continue;
      }
      out += text_[pos_++];
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  json array_value() {
    ++pos_;
    json arr = json::array();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ']') {
      ++pos_;
      return arr;
    }
    while (true) {
      arr.push_back(value());
      skip_space();
      if (pos_ >= text_.size()) fail("unterminated array");
      if (text_[pos_] == ',') {
        ++pos_;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ']') {
          ++pos_;
          return arr;
        }
        continue;
      }
      if (text_[pos_] == ']') {
        ++pos_;
        return arr;
      }
      fail("expected ',' or ']' in array");
    }
  }

  json number_value() {
    std::size_t end = pos_;
    while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) ||
                                  text_[end] == '.' || text_[end] == '+' || text_[end] == '-' ||
                                  text_[end] == '_')) {
      ++end;
    }
    std::string token = text_.substr(pos_, end - pos_);
    std::erase(token, '_');
    if (token.empty()) fail("expected a value");
    pos_ = end;
    const bool is_float = token.find_first_of(".eE") != std::string::npos ||
                          token == "inf" || token == "nan";
    if (!is_float) {
      long long v = 0;
      const char* first = token.data() + (token[0] == '+' ? 1 : 0);
      auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        fail("malformed number '" + token + "'");
      }
      return v;
    }
    char* stop = nullptr;
    const double v = std::strtod(token.c_str(), &stop);
    if (stop != token.c_str() + token.size()) fail("malformed number '" + token + "'");
    return v;
  }

  const std::string& text_;
  const std::string& source_;
  int line_;
  std::size_t pos_ = 0;
};

int bracket_balance(const std::string& s) {
  int depth = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) quoted = !quoted;
    if (quoted) continue;
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
  }
  return depth;
}

}  // namespace

ParseError::ParseError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

nlohmann::json parse_toml_lite(std::istream& in, const std::string& source_name) {
  json root = json::object();
  json* current = &root;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const int start_line = line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.rfind("[[", 0) == 0) {
      if (line.size() < 4 || line.substr(line.size() - 2) != "]]") {
        throw ParseError(source_name, line_no, "malformed array-of-tables header");
      }
      const std::string name = trim(line.substr(2, line.size() - 4));
      if (!valid_key(name)) throw ParseError(source_name, line_no, "bad table name '" + name + "'");
      json& arr = root[name];
      if (arr.is_null()) arr = json::array();
      if (!arr.is_array()) {
        throw ParseError(source_name, line_no, "'" + name + "' already defined as a table");
      }
      arr.push_back(json::object());
      current = &arr.back();
      continue;
    }
    if (line[0] == '[') {
      if (line.back() != ']') throw ParseError(source_name, line_no, "malformed table header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (!valid_key(name)) throw ParseError(source_name, line_no, "bad table name '" + name + "'");
      if (root.contains(name)) {
        throw ParseError(source_name, line_no, "table '" + name + "' defined twice");
      }
      root[name] = json::object();
      current = &root[name];
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(source_name, line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!valid_key(key)) throw ParseError(source_name, line_no, "bad key '" + key + "'");
    std::string value_text = trim(line.substr(eq + 1));
    // Multi-line arrays: keep reading until brackets balance.
    while (bracket_balance(value_text) > 0 && std::getline(in, raw)) {
      ++line_no;
      value_text += " " + trim(strip_comment(raw));
    }
    if (current->contains(key)) {
      throw ParseError(source_name, start_line, "duplicate key '" + key + "'");
    }
    (*current)[key] = ValueParser(value_text, source_name, start_line).parse();
  }
  return root;
}

}  // namespace rst::app
