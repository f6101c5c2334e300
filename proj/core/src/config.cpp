// SPDX-License-Identifier: Apache-2.0

#include "raopt/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace raopt {

std::string trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1])))
    --e;
  return std::string(text.substr(b, e - b));
}

KeyValues parse_key_values(std::string_view text) {
  KeyValues out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty())
      continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(std::string_view(stripped).substr(0, eq));
    if (key.empty())
      throw std::invalid_argument("line " + std::to_string(lineno) + ": empty key");
    out.emplace_back(std::move(key), trim(std::string_view(stripped).substr(eq + 1)));
  }
  return out;
}

namespace {

double parse_factor(std::string_view tok, std::string_view whole) {
  const std::string t = trim(tok);
  if (t == "pi")
    return kPi;
  if (t == "-pi")
    return -kPi;
  double v = 0.0;
  const char *first = t.data();
  const char *last = t.data() + t.size();
  if (!t.empty() && *first == '+')
    ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last)
    throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  return v;
}

} // namespace

double parse_real(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty())
    throw std::invalid_argument("empty numeric value");
  // Left-to-right product/quotient of factors.
  double value = 1.0;
  char op = '*';
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    const bool at_op = i < s.size() && (s[i] == '*' || s[i] == '/') && i > 0 && s[i - 1] != 'e' && s[i - 1] != 'E';
    if (i == s.size() || at_op) {
      const double f = parse_factor(std::string_view(s).substr(start, i - start), s);
      value = op == '*' ? value * f : value / f;
      if (i < s.size())
        op = s[i];
      start = i + 1;
    }
  }
  return value;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      std::string item = trim(text.substr(start, i - start));
      if (!item.empty())
        out.push_back(std::move(item));
      start = i + 1;
    }
  }
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (const std::string &item : split_list(text))
    out.push_back(parse_real(item));
  if (out.empty())
    throw std::invalid_argument("empty list");
  return out;
}

std::uint64_t parse_unsigned(std::string_view text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw std::invalid_argument("not a non-negative integer: '" + t + "'");
  return v;
}

bool apply_scene_key(SceneConfig &c, const std::string &key, const std::string &value) {
  if (key == "K")
    c.K = parse_unsigned(value);
  else if (key == "Q")
    c.Q = parse_unsigned(value);
  else if (key == "lambda")
    c.lambda = parse_real(value);
  else if (key == "d")
    c.d = parse_real(value);
  else if (key == "Mx")
    c.Mx = parse_unsigned(value);
  else if (key == "My")
    c.My = parse_unsigned(value);
  else if (key == "p")
    c.p = static_cast<int>(parse_unsigned(value));
  else if (key == "theta_max")
    c.theta_max = parse_real(value);
  else if (key == "noise_dbm")
    c.noise_dbm = parse_real_list(value);
  else if (key == "p_max_dbm")
    c.p_max_dbm = parse_real_list(value);
  else if (key == "alpha")
    c.alpha = parse_real_list(value);
  else if (key == "eta_q")
    c.eta_q = parse_real(value);
  else if (key == "seed")
    c.seed = parse_unsigned(value);
  else
    return false;
  return true;
}

SceneConfig parse_scene_config(std::string_view text, SceneConfig base) {
  for (const auto &[key, value] : parse_key_values(text))
    if (!apply_scene_key(base, key, value))
      throw std::invalid_argument("unknown scene key '" + key + "'");
  return base;
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace raopt
