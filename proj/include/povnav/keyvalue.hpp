#pragma once

// Line-oriented `keyword key=value key=value ...` text format shared by world
// files and suite files. `#` starts a comment; blank lines are ignored.

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "povnav/core.hpp"

namespace povnav::kv {

struct Line {
  std::string source;  // file name used in diagnostics
  int number = 0;
  std::string keyword;
  std::map<std::string, std::string> fields;
  std::vector<std::string> order;

  [[nodiscard]] std::string where() const { return source + ":" + std::to_string(number); }

  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(where() + ": " + what); }

  [[nodiscard]] bool has(const std::string& key) const { return fields.count(key) != 0; }

  [[nodiscard]] const std::string& text(const std::string& key) const {
    auto it = fields.find(key);
    if (it == fields.end()) fail("missing key '" + key + "'");
    return it->second;
  }

  [[nodiscard]] std::string text_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
  }

  [[nodiscard]] double number_of(const std::string& key) const {
    const std::string& s = text(key);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("key '" + key + "': not a number: " + s);
    return v;
  }

  [[nodiscard]] double number_or(const std::string& key, double fallback) const {
    return has(key) ? number_of(key) : fallback;
  }

  [[nodiscard]] std::int64_t integer_of(const std::string& key) const {
    const std::string& s = text(key);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("key '" + key + "': not an integer: " + s);
    return v;
  }

  [[nodiscard]] std::int64_t integer_or(const std::string& key, std::int64_t fallback) const {
    return has(key) ? integer_of(key) : fallback;
  }

  [[nodiscard]] bool flag_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& s = text(key);
    if (s == "1" || s == "true" || s == "on" || s == "yes") return true;
    if (s == "0" || s == "false" || s == "off" || s == "no") return false;
    fail("key '" + key + "': expected a boolean, got " + s);
  }

  /// Rejects keys outside `allowed`, catching typos early.
  void expect_only(std::initializer_list<const char*> allowed) const {
    for (const auto& k : order) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) fail("unknown key '" + k + "' for '" + keyword + "'");
    }
  }
};

[[nodiscard]] inline std::vector<Line> parse(std::istream& in, const std::string& source) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::string tok;
    Line line{source, number, {}, {}, {}};
    while (tokens >> tok) {
      if (line.keyword.empty()) {
        if (tok.find('=') != std::string::npos) line.fail("line must start with a keyword");
        line.keyword = tok;
        continue;
      }
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) line.fail("expected key=value, got '" + tok + "'");
      std::string key = tok.substr(0, eq);
      if (line.fields.count(key)) line.fail("duplicate key '" + key + "'");
      line.fields.emplace(key, tok.substr(eq + 1));
      line.order.push_back(std::move(key));
    }
    if (!line.keyword.empty()) lines.push_back(std::move(line));
  }
  if (in.bad()) throw ConfigError(source + ": read error");
  return lines;
}

}  // namespace povnav::kv
