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

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace umic {

using cxd = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0; // m/s
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double p) { return 10.0 * std::log10(p); }
inline double amp_to_db(double a) { return 20.0 * std::log10(a); }
inline double db_to_amp(double db) { return std::pow(10.0, db / 20.0); }

inline double deg_to_rad(double d) { return d * kPi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / kPi; }

// Wraps an angle to [-pi, pi).
inline double wrap_angle(double a) {
  a = std::fmod(a + kPi, kTwoPi);
  if (a < 0.0)
    a += kTwoPi;
  return a - kPi;
}

// Absolute circular distance between two angles, in [0, pi].
inline double angle_distance(double a, double b) {
  return std::abs(wrap_angle(a - b));
}

// Bad run configuration (unusable parameter combinations, non-primitive PN
// polynomials, windows larger than arrays, ...).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
};

// Malformed binary blob or manifest. Carries the byte offset at which the
// problem was detected, when known.
class FormatError : public std::runtime_error {
public:
  FormatError(const std::string &msg, std::size_t offset)
      : std::runtime_error(msg + " (offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  explicit FormatError(const std::string &msg)
      : std::runtime_error(msg), offset_(0) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

// Ill-conditioned OTA calibration (reference spectrum vanishes in-band).
class CalibrationError : public std::runtime_error {
public:
  explicit CalibrationError(const std::string &msg)
      : std::runtime_error(msg) {}
};

} // namespace umic
