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

#include "umic/mpc.hpp"

#include <stdexcept>

namespace umic {

void Mpc::validate() const {
  if (!(delay_s >= 0.0) || !std::isfinite(delay_s))
    throw std::invalid_argument("MPC delay must be finite and >= 0");
  if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag()))
    throw std::invalid_argument("MPC amplitude must be finite");
  for (double a : {aaod_rad, aaoa_rad})
    if (a < -kPi - 1e-12 || a >= kPi + 1e-12)
      throw std::invalid_argument("MPC azimuth outside [-pi, pi)");
  for (double e : {eaod_rad, eaoa_rad})
    if (e < -kPi / 2 - 1e-12 || e > kPi / 2 + 1e-12)
      throw std::invalid_argument("MPC elevation outside [-pi/2, pi/2]");
}

Mpc make_los_mpc(const ArrayGeometry &tx, const ArrayGeometry &rx,
                 cxd amplitude) {
  const Vec3 d_tx_rx = rx.origin - tx.origin;
  const double dist = d_tx_rx.norm();
  if (dist <= 0.0)
    throw std::invalid_argument("arrays are co-located");
  Mpc m;
  m.amplitude = amplitude;
  m.delay_s = dist / kSpeedOfLight;
  const AzEl dep = angles_from_direction(tx.global_to_local_dir(d_tx_rx));
  const AzEl arr =
      angles_from_direction(rx.global_to_local_dir(tx.origin - rx.origin));
  m.aaod_rad = dep.azimuth_rad;
  m.eaod_rad = dep.elevation_rad;
  m.aaoa_rad = arr.azimuth_rad;
  m.eaoa_rad = arr.elevation_rad;
  m.validate();
  return m;
}

Mpc make_single_bounce_mpc(const ArrayGeometry &tx, const ArrayGeometry &rx,
                           const Vec3 &bounce_point, cxd amplitude) {
  const Vec3 leg_out = bounce_point - tx.origin;
  const Vec3 leg_in = bounce_point - rx.origin;
  const double r1 = leg_out.norm();
  const double r2 = leg_in.norm();
  if (r1 <= 0.0 || r2 <= 0.0)
    throw std::invalid_argument("bounce point coincides with an array origin");
  Mpc m;
  m.amplitude = amplitude;
  m.delay_s = (r1 + r2) / kSpeedOfLight;
  const AzEl dep = angles_from_direction(tx.global_to_local_dir(leg_out));
  const AzEl arr = angles_from_direction(rx.global_to_local_dir(leg_in));
  m.aaod_rad = dep.azimuth_rad;
  m.eaod_rad = dep.elevation_rad;
  m.aaoa_rad = arr.azimuth_rad;
  m.eaoa_rad = arr.elevation_rad;
  m.validate();
  return m;
}

} // namespace umic
