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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "umic/common.hpp"

namespace umic {

// Plain-text key = value configuration ('#' comments). Physical quantities
// carry their unit in the key name (carrier_hz, distance_m, ...).
class KeyValueConfig {
public:
  KeyValueConfig() = default;

  static KeyValueConfig from_file(const std::string &path);
  static KeyValueConfig from_string(const std::string &text);

  bool has(const std::string &key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string &key,
                         const std::string &fallback) const;
  double get_double(const std::string &key, double fallback) const;
  std::int64_t get_int(const std::string &key, std::int64_t fallback) const;
  std::uint64_t get_uint(const std::string &key, std::uint64_t fallback) const;
  bool get_bool(const std::string &key, bool fallback) const;
  std::vector<std::string> get_list(const std::string &key) const;

  void set(const std::string &key, const std::string &value) {
    values_[key] = value;
  }
  const std::map<std::string, std::string> &values() const { return values_; }

private:
  std::map<std::string, std::string> values_;
};

} // namespace umic
