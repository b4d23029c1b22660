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

#include <cstddef>
#include <vector>

#include "umic/common.hpp"

namespace umic {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const;
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

// Unit vector for (azimuth, elevation). Azimuth is measured from +x toward
// +y, elevation from the horizontal plane toward +z.
Vec3 direction_from_angles(double azimuth_rad, double elevation_rad);

struct AzEl {
  double azimuth_rad;
  double elevation_rad;
};
AzEl angles_from_direction(const Vec3 &dir);

enum class ArrayKind { kLShapedUla, kPlanar, kQuadPanel, kCustom };

// Per-element radiation pattern applied as a real voltage gain versus the
// boresight angle. kCosine120 is a cosine power pattern (half power at 60
// degrees off boresight, i.e. 120 degree HPBW), zero behind the aperture.
enum class ElementPattern { kIsotropic, kCosine120 };

// Antenna array: element positions in the array-local frame plus a global
// pose. Local frame convention: +x is boresight, +y runs along the
// horizontal aperture, +z is up. The pose applies an elevation tilt about
// local y (positive raises boresight) followed by a bearing about global z.
struct ArrayGeometry {
  std::vector<Vec3> elements; // local frame, meters
  Vec3 origin{};              // global frame, meters
  double bearing_rad = 0.0;
  double tilt_rad = 0.0;
  ArrayKind kind = ArrayKind::kCustom;
  ElementPattern pattern = ElementPattern::kIsotropic;

  std::size_t size() const { return elements.size(); }

  Vec3 local_to_global_dir(const Vec3 &v) const;
  Vec3 global_to_local_dir(const Vec3 &v) const;
  Vec3 element_global(std::size_t i) const;
  Vec3 boresight_global() const { return local_to_global_dir({1, 0, 0}); }

  // Largest pairwise element distance (the aperture D in 2 D^2 / lambda).
  double aperture_m() const;

  // Real voltage gain of the element pattern for a direction given in the
  // local frame.
  double pattern_gain(const Vec3 &local_dir) const;

  // Contiguous element window [offset, offset + count), same pose. Used by
  // the SAGE subarray partitioning.
  ArrayGeometry subset(std::size_t offset, std::size_t count) const;

  // Enforces the structural invariants for the named array kinds.
  void validate() const;
};

// Half-wavelength spacing at the 15 GHz carrier.
inline constexpr double kDefaultSpacing15GHz = 0.01;

// Uniform linear array along local +y with the first element at the origin.
ArrayGeometry make_ula(std::size_t n, double spacing_m = kDefaultSpacing15GHz);

// L-shaped array: n/2 elements along local +y (horizontal leg) and n/2
// stacked along local +z (vertical leg), one spacing above the corner. The
// default spacing reproduces a 63.2 cm horizontal leg with 64 elements.
ArrayGeometry make_l_shaped_ula(std::size_t n = 128,
                                double spacing_m = 0.632 / 63.0);

// rows x cols planar grid in the local y-z plane, centered on the origin.
ArrayGeometry make_planar(std::size_t rows, std::size_t cols,
                          double spacing_m = kDefaultSpacing15GHz);

// Four (n/4)-element panels facing 0/90/180/270 degrees, each offset from
// the center along its own boresight. Panels are (n/8) x 2 grids.
ArrayGeometry make_quad_panel(std::size_t n = 64,
                              double spacing_m = kDefaultSpacing15GHz);

ArrayGeometry make_custom(std::vector<Vec3> elements);

} // namespace umic
