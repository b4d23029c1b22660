// SPDX-License-Identifier: Apache-2.0
//
// umic - UM-MIMO channel synthesis, sounding emulation and characterization
// Copyright (C) 2025-2026 The umic authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "umic/config.hpp"

#include <fstream>
#include <sstream>

namespace umic {

namespace {

std::string trim(const std::string &s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos)
    return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

} // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return from_string(ss.str());
}

KeyValueConfig KeyValueConfig::from_string(const std::string &text) {
  KeyValueConfig cfg;
  std::stringstream ss(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(line_no) +
                        " has an empty key");
    cfg.values_[key] = value;
  }
  return cfg;
}

std::string KeyValueConfig::get_string(const std::string &key,
                                       const std::string &fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string &key,
                                  double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end())
    return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size())
      throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception &) {
    throw ConfigError("config key '" + key + "' is not a number: '" +
                      it->second + "'");
  }
}

std::int64_t KeyValueConfig::get_int(const std::string &key,
                                     std::int64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end())
    return fallback;
  try {
    return std::stoll(it->second);
  } catch (const std::exception &) {
    throw ConfigError("config key '" + key + "' is not an integer: '" +
                      it->second + "'");
  }
}

std::uint64_t KeyValueConfig::get_uint(const std::string &key,
                                       std::uint64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end())
    return fallback;
  try {
    return std::stoull(it->second);
  } catch (const std::exception &) {
    throw ConfigError("config key '" + key + "' is not an unsigned integer: '" +
                      it->second + "'");
  }
}

bool KeyValueConfig::get_bool(const std::string &key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end())
    return fallback;
  const std::string &v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on")
    return true;
  if (v == "false" || v == "0" || v == "no" || v == "off")
    return false;
  throw ConfigError("config key '" + key + "' is not a boolean: '" + v + "'");
}

std::vector<std::string> KeyValueConfig::get_list(const std::string &key) const {
  const auto it = values_.find(key);
  std::vector<std::string> out;
  if (it == values_.end())
    return out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty())
      out.push_back(item);
  }
  return out;
}

} // namespace umic
