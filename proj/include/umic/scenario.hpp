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
#include <string>

#include "umic/geometry.hpp"

namespace umic {

enum class ScenarioClass { kNfLos, kNfFoliage, kFfFoliage, kFfLos };

std::string to_string(ScenarioClass c);
ScenarioClass scenario_class_from_string(const std::string &s);

// One synthesized or imported link configuration.
struct ScenarioConfig {
  double carrier_hz = 15.0e9;
  double bandwidth_hz = 250.0e6;
  ArrayGeometry tx_geometry;
  ArrayGeometry rx_geometry;
  double link_distance_m = 25.0;
  double foliage_depth_m = 0.0;
  ScenarioClass scenario_class = ScenarioClass::kNfLos;
  double noise_floor_dbm = -130.0;
  std::uint64_t seed = 1;

  // Synthesis controls. The delay window matches one PN period at the
  // default sounder settings (1023 chips at 4 ns).
  std::size_t n_freq = 128;
  std::size_t n_snapshots = 1;
  double delay_window_s = 1023 * 4.0e-9;

  void validate() const;
};

} // namespace umic
