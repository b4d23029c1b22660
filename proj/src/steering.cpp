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

#include "umic/steering.hpp"

#include <stdexcept>

namespace umic {

std::vector<cxd> steering_spherical(const ArrayGeometry &geometry,
                                    const Vec3 &source_global,
                                    double freq_hz) {
  if (!std::isfinite(freq_hz) || freq_hz <= 0.0)
    throw std::invalid_argument("frequency must be finite and > 0");
  std::vector<cxd> v(geometry.size());
  const double k = kTwoPi * freq_hz / kSpeedOfLight;
  for (std::size_t n = 0; n < geometry.size(); ++n) {
    const double d = (source_global - geometry.element_global(n)).norm();
    if (d < 1e-9)
      throw std::invalid_argument("source coincides with an array element");
    const double mag = kSpeedOfLight / (4.0 * kPi * d * freq_hz);
    v[n] = std::polar(mag, -k * d);
  }
  return v;
}

std::vector<cxd> steering_planar(const ArrayGeometry &geometry,
                                 double azimuth_rad, double elevation_rad,
                                 double freq_hz) {
  if (!std::isfinite(freq_hz) || freq_hz <= 0.0)
    throw std::invalid_argument("frequency must be finite and > 0");
  if (elevation_rad < -kPi / 2 - 1e-12 || elevation_rad > kPi / 2 + 1e-12)
    throw std::invalid_argument("elevation outside [-pi/2, pi/2]");
  const Vec3 u = direction_from_angles(azimuth_rad, elevation_rad);
  const double k = kTwoPi * freq_hz / kSpeedOfLight;
  std::vector<cxd> v(geometry.size());
  for (std::size_t n = 0; n < geometry.size(); ++n)
    v[n] = std::polar(1.0, k * u.dot(geometry.elements[n]));
  return v;
}

} // namespace umic
