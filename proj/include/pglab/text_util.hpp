#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "pglab/errors.hpp"

namespace pglab {

// Shortest decimal form that round-trips through a double.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Fixed scientific form with 6 significant digits, for report emission.
inline std::string format_double_sci6(double v) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 5);
  return std::string(buf, ptr);
}

// Strict double parse: the whole token must be consumed.
inline double parse_double(std::string_view tok, int line, const std::string& what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "malformed number for " + what + ": '" + std::string(tok) + "'");
  return v;
}

inline long parse_long(std::string_view tok, int line, const std::string& what) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "malformed integer for " + what + ": '" + std::string(tok) + "'");
  return v;
}

// Whitespace-separated tokens; everything after '#' is a comment.
inline std::vector<std::string_view> tokenize_line(std::string_view line) {
  std::vector<std::string_view> toks;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' &&
           line[j] != '#')
      ++j;
    toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// Splits "key=value"; returns false when there is no '='.
inline bool split_kv(std::string_view tok, std::string_view& key, std::string_view& val) {
  size_t eq = tok.find('=');
  if (eq == std::string_view::npos) return false;
  key = tok.substr(0, eq);
  val = tok.substr(eq + 1);
  return true;
}

}  // namespace pglab
