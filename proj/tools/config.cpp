// Copyright 2026 The csqaoa-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <fstream>
#include <sstream>

namespace csqaoa {

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_list(const std::string& body,
                                    const std::string& where) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : body) {
    if (c == ',') {
      std::string tok = strip(cur);
      if (!tok.empty()) out.push_back(unquote(tok));
      cur.clear();
    } else {
      cur += c;
    }
  }
  std::string tok = strip(cur);
  if (!tok.empty()) out.push_back(unquote(tok));
  if (out.empty()) throw ConfigError(where + ": empty list");
  return out;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream body;
  body << in.rdbuf();
  return parse(body.str(), path);
}

Config Config::parse(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.text_ = text;
  cfg.origin_ = origin.empty() ? "<config>" : origin;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = strip(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    std::ostringstream where;
    where << cfg.origin_ << ":" << line_no;
    if (eq == std::string::npos)
      throw ConfigError(where.str() + ": expected key = value");
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(where.str() + ": expected key = value");
    if (cfg.values_.count(key))
      throw ConfigError(where.str() + ": duplicate key '" + key + "'");
    if (value.front() == '[') {
      if (value.back() != ']')
        throw ConfigError(where.str() + ": unterminated list");
      cfg.values_[key] = split_list(value.substr(1, value.size() - 2), where.str());
    } else {
      cfg.values_[key] = {unquote(value)};
    }
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

const std::vector<std::string>& Config::tokens(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    throw ConfigError(origin_ + ": missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key) const {
  const auto& t = tokens(key);
  if (t.size() != 1)
    throw ConfigError(origin_ + ": key '" + key + "' is a list, expected a scalar");
  return t[0];
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double Config::get_number(const std::string& key) const {
  const std::string s = get_string(key);
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": key '" + key + "' is not a number: " + s);
  }
}

double Config::get_number(const std::string& key, double fallback) const {
  return has(key) ? get_number(key) : fallback;
}

long Config::get_int(const std::string& key, long fallback) const {
  return has(key) ? static_cast<long>(get_number(key)) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key,
                              std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string s = get_string(key);
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": key '" + key + "' is not an integer: " + s);
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string s = get_string(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(origin_ + ": key '" + key + "' is not a boolean: " + s);
}

std::vector<double> Config::get_numbers(const std::string& key) const {
  std::vector<double> out;
  for (const auto& t : tokens(key)) {
    try {
      out.push_back(std::stod(t));
    } catch (const std::exception&) {
      throw ConfigError(origin_ + ": key '" + key + "' has a non-number: " + t);
    }
  }
  return out;
}

std::vector<double> Config::get_numbers(
    const std::string& key, const std::vector<double>& fallback) const {
  return has(key) ? get_numbers(key) : fallback;
}

std::vector<std::string> Config::get_strings(const std::string& key) const {
  return tokens(key);
}

std::vector<std::string> Config::get_strings(
    const std::string& key, const std::vector<std::string>& fallback) const {
  return has(key) ? get_strings(key) : fallback;
}

}  // namespace csqaoa
