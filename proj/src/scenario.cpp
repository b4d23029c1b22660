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

#include "umic/scenario.hpp"

#include <stdexcept>

namespace umic {

std::string to_string(ScenarioClass c) {
  switch (c) {
  case ScenarioClass::kNfLos:
    return "nf_los";
  case ScenarioClass::kNfFoliage:
    return "nf_foliage";
  case ScenarioClass::kFfFoliage:
    return "ff_foliage";
  case ScenarioClass::kFfLos:
    return "ff_los";
  }
  return "unknown";
}

ScenarioClass scenario_class_from_string(const std::string &s) {
  if (s == "nf_los")
    return ScenarioClass::kNfLos;
  if (s == "nf_foliage")
    return ScenarioClass::kNfFoliage;
  if (s == "ff_foliage")
    return ScenarioClass::kFfFoliage;
  if (s == "ff_los")
    return ScenarioClass::kFfLos;
  throw ConfigError("unknown scenario class: " + s);
}

void ScenarioConfig::validate() const {
  if (!(bandwidth_hz > 0.0))
    throw std::invalid_argument("bandwidth must be > 0");
  if (!(carrier_hz > bandwidth_hz / 2.0))
    throw std::invalid_argument("carrier must exceed half the bandwidth");
  if (!(link_distance_m > 0.0))
    throw std::invalid_argument("link distance must be > 0");
  if (!(foliage_depth_m >= 0.0))
    throw std::invalid_argument("foliage depth must be >= 0");
  if (n_freq < 1 || n_snapshots < 1)
    throw std::invalid_argument("tensor dimensions must be >= 1");
  if (!(delay_window_s > 0.0))
    throw std::invalid_argument("delay window must be > 0");
  tx_geometry.validate();
  rx_geometry.validate();
}

} // namespace umic
