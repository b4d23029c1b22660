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
#include <random>

#include "umic/common.hpp"

namespace umic {

// Seeded random source with a fully specified output sequence. The standard
// distribution adaptors are implementation-defined, so normal variates are
// produced with an explicit Box-Muller transform to keep results identical
// across toolchains for a given seed.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in (0, 1), both endpoints excluded.
  double uniform() {
    const std::uint64_t r = engine_() >> 11; // 53 random bits
    return (static_cast<double>(r) + 0.5) * (1.0 / 9007199254740992.0);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal N(0, 1).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = kTwoPi * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

  double normal(double mu, double sigma) { return mu + sigma * normal(); }

  // Circularly-symmetric complex Gaussian CN(0, 1): E|z|^2 = 1.
  cxd cnormal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1)); // |z| Rayleigh, E|z|^2 = 1
    const double th = kTwoPi * u2;
    return {r * std::cos(th), r * std::sin(th)};
  }

  std::uint64_t raw() { return engine_(); }

  // Derives an independent stream, for per-link / per-pair seeding.
  Rng fork(std::uint64_t stream) {
    return Rng(engine_() ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

} // namespace umic
