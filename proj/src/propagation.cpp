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

#include "umic/propagation.hpp"

#include <stdexcept>

namespace umic {

double rayleigh_distance(double aperture_m, double carrier_hz) {
  if (!std::isfinite(aperture_m) || aperture_m < 0.0)
    throw std::invalid_argument("aperture must be finite and >= 0");
  if (!std::isfinite(carrier_hz) || carrier_hz <= 0.0)
    throw std::invalid_argument("carrier frequency must be finite and > 0");
  const double lambda = kSpeedOfLight / carrier_hz;
  return 2.0 * aperture_m * aperture_m / lambda;
}

double fspl_db(double distance_m, double freq_hz) {
  if (!std::isfinite(distance_m) || distance_m <= 0.0)
    throw std::invalid_argument("distance must be finite and > 0");
  if (!std::isfinite(freq_hz) || freq_hz <= 0.0)
    throw std::invalid_argument("frequency must be finite and > 0");
  return 20.0 * std::log10(4.0 * kPi * distance_m * freq_hz / kSpeedOfLight);
}

double foliage_excess_loss_db(double depth_m, double freq_mhz,
                              const VegetationLossParams &params) {
  if (!std::isfinite(depth_m) || depth_m < 0.0)
    throw std::invalid_argument("vegetation depth must be finite and >= 0");
  if (!std::isfinite(freq_mhz) || freq_mhz <= 0.0)
    throw std::invalid_argument("frequency must be finite and > 0");
  if (depth_m == 0.0) {
    if (params.c <= 0.0)
      throw std::domain_error("zero depth undefined for exponent C <= 0");
    return 0.0;
  }
  return params.a * std::pow(freq_mhz, params.b) * std::pow(depth_m, params.c);
}

} // namespace umic
