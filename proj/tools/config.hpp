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

#ifndef CSQAOA_TOOLS_CONFIG_HPP_
#define CSQAOA_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace csqaoa {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key = value configuration text ('#' comments, quoted or bare
// strings, numbers, booleans, and [a, b, c] lists).
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse(const std::string& text, const std::string& origin = "");

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_number(const std::string& key) const;
  double get_number(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_numbers(const std::string& key) const;
  std::vector<double> get_numbers(const std::string& key,
                                  const std::vector<double>& fallback) const;
  std::vector<std::string> get_strings(const std::string& key) const;
  std::vector<std::string> get_strings(
      const std::string& key, const std::vector<std::string>& fallback) const;

  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::map<std::string, std::vector<std::string>> values_;  // token lists
  std::string origin_;

  const std::vector<std::string>& tokens(const std::string& key) const;
};

}  // namespace csqaoa

#endif  // CSQAOA_TOOLS_CONFIG_HPP_
