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

#include <vector>

#include "umic/common.hpp"
#include "umic/geometry.hpp"

namespace umic {

// One multipath component. Departure angles are referenced to the transmit
// array's local frame, arrival angles to the receive array's local frame.
// Amplitude is a linear complex voltage gain.
struct Mpc {
  cxd amplitude{0.0, 0.0};
  double delay_s = 0.0;
  double aaod_rad = 0.0; // azimuth of departure
  double aaoa_rad = 0.0; // azimuth of arrival
  double eaod_rad = 0.0; // elevation of departure
  double eaoa_rad = 0.0; // elevation of arrival

  double power_db() const { return 10.0 * std::log10(std::norm(amplitude)); }

  // delay >= 0, finite amplitude, azimuths in [-pi, pi), elevations in
  // [-pi/2, pi/2].
  void validate() const;
};

// Direct-path MPC between two posed arrays: delay and angles follow from
// the origin-to-origin geometry, so the triple is consistent by
// construction for spherical synthesis.
Mpc make_los_mpc(const ArrayGeometry &tx, const ArrayGeometry &rx,
                 cxd amplitude);

// Single-bounce MPC via an explicit scatter point (global frame).
Mpc make_single_bounce_mpc(const ArrayGeometry &tx, const ArrayGeometry &rx,
                           const Vec3 &bounce_point, cxd amplitude);

} // namespace umic
