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

#include "umic/common.hpp"

namespace umic {

// Near-field / far-field boundary 2 D^2 / lambda for an aperture D.
double rayleigh_distance(double aperture_m, double carrier_hz);

// Free-space path loss 20 log10(4 pi d f / c), in dB.
double fspl_db(double distance_m, double freq_hz);

// Vegetation excess-loss model A * f^B * d^C with f in MHz and d in meters.
struct VegetationLossParams {
  double a;
  double b;
  double c;
};

// Out-of-leaf and in-leaf constant sets of the original model.
inline constexpr VegetationLossParams kCost235OutOfLeaf{26.6, -0.2, 0.5};
inline constexpr VegetationLossParams kCost235InLeaf{15.6, -0.009, 0.26};

double foliage_excess_loss_db(double depth_m, double freq_mhz,
                              const VegetationLossParams &params);

} // namespace umic
