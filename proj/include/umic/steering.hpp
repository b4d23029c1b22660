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

// Spherical-wavefront response of every element to a point source at a
// global position: entry_n = c / (4 pi d_n f) * exp(-j 2 pi f d_n / c) with
// d_n the exact element-to-source distance.
std::vector<cxd> steering_spherical(const ArrayGeometry &geometry,
                                    const Vec3 &source_global, double freq_hz);

// Plane-wave steering for a direction given in the array-local frame.
// Entries are unit magnitude with phase exp(+j 2 pi f/c <u, x_n>), u the
// unit vector toward the source; this is the far-field limit of
// steering_spherical once the common bulk phase is removed.
std::vector<cxd> steering_planar(const ArrayGeometry &geometry,
                                 double azimuth_rad, double elevation_rad,
                                 double freq_hz);

} // namespace umic
