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

#include "umic/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace umic {

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (n <= 0.0)
    throw std::invalid_argument("cannot normalize a zero vector");
  return {x / n, y / n, z / n};
}

Vec3 direction_from_angles(double azimuth_rad, double elevation_rad) {
  const double ce = std::cos(elevation_rad);
  return {ce * std::cos(azimuth_rad), ce * std::sin(azimuth_rad),
          std::sin(elevation_rad)};
}

AzEl angles_from_direction(const Vec3 &dir) {
  const Vec3 u = dir.normalized();
  const double el = std::asin(std::clamp(u.z, -1.0, 1.0));
  const double az = (std::abs(u.x) + std::abs(u.y) > 0.0)
                        ? std::atan2(u.y, u.x)
                        : 0.0;
  return {az, el};
}

// Pose rotation: R = Rz(bearing) * Ry(-tilt). Positive tilt raises the
// boresight (+x) toward +z.
Vec3 ArrayGeometry::local_to_global_dir(const Vec3 &v) const {
  const double ct = std::cos(tilt_rad), st = std::sin(tilt_rad);
  const Vec3 tilted{v.x * ct - v.z * st, v.y, v.x * st + v.z * ct};
  const double cb = std::cos(bearing_rad), sb = std::sin(bearing_rad);
  return {tilted.x * cb - tilted.y * sb, tilted.x * sb + tilted.y * cb,
          tilted.z};
}

Vec3 ArrayGeometry::global_to_local_dir(const Vec3 &v) const {
  const double cb = std::cos(bearing_rad), sb = std::sin(bearing_rad);
  const Vec3 unbear{v.x * cb + v.y * sb, -v.x * sb + v.y * cb, v.z};
  const double ct = std::cos(tilt_rad), st = std::sin(tilt_rad);
  return {unbear.x * ct + unbear.z * st, unbear.y,
          -unbear.x * st + unbear.z * ct};
}

Vec3 ArrayGeometry::element_global(std::size_t i) const {
  return origin + local_to_global_dir(elements.at(i));
}

double ArrayGeometry::aperture_m() const {
  double best = 0.0;
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j)
      best = std::max(best, (elements[i] - elements[j]).norm());
  return best;
}

double ArrayGeometry::pattern_gain(const Vec3 &local_dir) const {
  if (pattern == ElementPattern::kIsotropic)
    return 1.0;
  const Vec3 u = local_dir.normalized();
  const double c = u.x; // cosine of the boresight angle
  if (c <= 0.0)
    return 0.0;
  return std::sqrt(c); // cosine power pattern, half power at 60 degrees
}

ArrayGeometry ArrayGeometry::subset(std::size_t offset,
                                    std::size_t count) const {
  if (offset + count > elements.size())
    throw ConfigError("element window exceeds array size");
  ArrayGeometry g = *this;
  g.kind = ArrayKind::kCustom;
  g.elements.assign(elements.begin() + static_cast<std::ptrdiff_t>(offset),
                    elements.begin() +
                        static_cast<std::ptrdiff_t>(offset + count));
  return g;
}

namespace {

bool uniform_spacing(const std::vector<Vec3> &pts, double *spacing_out) {
  if (pts.size() < 2)
    return true;
  const double s0 = (pts[1] - pts[0]).norm();
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double s = (pts[i + 1] - pts[i]).norm();
    if (std::abs(s - s0) > 1e-9 * std::max(1.0, s0))
      return false;
  }
  if (spacing_out)
    *spacing_out = s0;
  return true;
}

} // namespace

void ArrayGeometry::validate() const {
  if (elements.empty())
    throw std::invalid_argument("array must contain at least one element");
  for (const Vec3 &e : elements)
    if (!e.finite())
      throw std::invalid_argument("array element position is not finite");

  if (kind == ArrayKind::kLShapedUla) {
    if (elements.size() % 2 != 0)
      throw std::invalid_argument("L-shaped array needs an even element count");
    const std::size_t half = elements.size() / 2;
    std::vector<Vec3> leg_a(elements.begin(),
                            elements.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<Vec3> leg_b(elements.begin() + static_cast<std::ptrdiff_t>(half),
                            elements.end());
    double sa = 0.0, sb = 0.0;
    if (!uniform_spacing(leg_a, &sa) || !uniform_spacing(leg_b, &sb) ||
        std::abs(sa - sb) > 1e-9)
      throw std::invalid_argument("L-shaped array legs must be uniform");
    if (half >= 2) {
      const Vec3 da = (leg_a.back() - leg_a.front()).normalized();
      const Vec3 db = (leg_b.back() - leg_b.front()).normalized();
      if (std::abs(da.dot(db)) > 1e-9)
        throw std::invalid_argument("L-shaped array legs must be orthogonal");
    }
  }

  if (kind == ArrayKind::kQuadPanel) {
    if (elements.size() % 4 != 0)
      throw std::invalid_argument("quad array needs a multiple of 4 elements");
  }
}

ArrayGeometry make_ula(std::size_t n, double spacing_m) {
  if (n == 0 || spacing_m <= 0.0)
    throw std::invalid_argument("bad ULA parameters");
  ArrayGeometry g;
  g.kind = ArrayKind::kCustom;
  g.elements.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    g.elements.push_back({0.0, static_cast<double>(i) * spacing_m, 0.0});
  return g;
}

ArrayGeometry make_l_shaped_ula(std::size_t n, double spacing_m) {
  if (n < 2 || n % 2 != 0 || spacing_m <= 0.0)
    throw std::invalid_argument("bad L-array parameters");
  ArrayGeometry g;
  g.kind = ArrayKind::kLShapedUla;
  const std::size_t half = n / 2;
  g.elements.reserve(n);
  for (std::size_t i = 0; i < half; ++i) // horizontal leg
    g.elements.push_back({0.0, static_cast<double>(i) * spacing_m, 0.0});
  for (std::size_t i = 0; i < half; ++i) // vertical leg above the corner
    g.elements.push_back({0.0, 0.0, static_cast<double>(i + 1) * spacing_m});
  g.validate();
  return g;
}

ArrayGeometry make_planar(std::size_t rows, std::size_t cols,
                          double spacing_m) {
  if (rows == 0 || cols == 0 || spacing_m <= 0.0)
    throw std::invalid_argument("bad planar-array parameters");
  ArrayGeometry g;
  g.kind = ArrayKind::kPlanar;
  g.elements.reserve(rows * cols);
  const double y0 = -0.5 * static_cast<double>(cols - 1) * spacing_m;
  const double z0 = -0.5 * static_cast<double>(rows - 1) * spacing_m;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      g.elements.push_back({0.0, y0 + static_cast<double>(c) * spacing_m,
                            z0 + static_cast<double>(r) * spacing_m});
  g.validate();
  return g;
}

ArrayGeometry make_quad_panel(std::size_t n, double spacing_m) {
  if (n < 8 || n % 8 != 0 || spacing_m <= 0.0)
    throw std::invalid_argument("bad quad-array parameters");
  ArrayGeometry g;
  g.kind = ArrayKind::kQuadPanel;
  const std::size_t per_panel = n / 4;
  const std::size_t cols = per_panel / 2; // two rows per panel
  const double y0 = -0.5 * static_cast<double>(cols - 1) * spacing_m;
  const double offset = 3.5 * spacing_m; // half panel width from the center
  for (int p = 0; p < 4; ++p) {
    const double a = static_cast<double>(p) * kPi / 2.0; // panel bearing
    const double ca = std::cos(a), sa = std::sin(a);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        // panel-local position, then rotate into the array frame
        const double px = offset;
        const double py = y0 + static_cast<double>(c) * spacing_m;
        const double pz = (static_cast<double>(r) - 0.5) * spacing_m;
        g.elements.push_back({px * ca - py * sa, px * sa + py * ca, pz});
      }
  }
  g.validate();
  return g;
}

ArrayGeometry make_custom(std::vector<Vec3> elements) {
  ArrayGeometry g;
  g.kind = ArrayKind::kCustom;
  g.elements = std::move(elements);
  g.validate();
  return g;
}

} // namespace umic
