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

#include "umic/pn.hpp"

#include <bit>

namespace umic {

long PnSequence::periodic_autocorrelation(std::size_t lag) const {
  const std::size_t n = chips.size();
  long acc = 0;
  for (std::size_t i = 0; i < n; ++i)
    acc += chips[i] * chips[(i + lag) % n];
  return acc;
}

std::uint32_t default_pn_polynomial(unsigned register_width) {
  switch (register_width) {
  case 5:
    return (1u << 5) | (1u << 2);
  case 6:
    return (1u << 6) | (1u << 1);
  case 7:
    return (1u << 7) | (1u << 6);
  case 8:
    return (1u << 8) | (1u << 6) | (1u << 5) | (1u << 4);
  case 9:
    return (1u << 9) | (1u << 5);
  case 10:
    return (1u << 10) | (1u << 3); // sounder default
  case 11:
    return (1u << 11) | (1u << 2);
  case 12:
    return (1u << 12) | (1u << 6) | (1u << 4) | (1u << 1);
  default:
    throw ConfigError("no default PN polynomial for register width " +
                      std::to_string(register_width));
  }
}

PnSequence gen_pn(unsigned register_width, std::uint32_t polynomial,
                  std::uint32_t init_state) {
  if (register_width < 2 || register_width > 24)
    throw ConfigError("PN register width out of range [2, 24]");
  if (polynomial == 0)
    polynomial = default_pn_polynomial(register_width);
  const std::uint32_t state_mask = (1u << register_width) - 1u;
  if ((init_state & state_mask) == 0)
    throw ConfigError("PN initial state must be nonzero");
  if ((polynomial >> register_width) > 1u ||
      ((polynomial >> register_width) & 1u) == 0u)
    throw ConfigError("PN polynomial degree must equal the register width");

  // Fibonacci form: feedback is the parity of the tapped state bits, taps
  // at bit (i-1) for each x^i term.
  const std::uint32_t tap_mask = (polynomial >> 1) & state_mask;
  const std::size_t period = (std::size_t{1} << register_width) - 1u;

  PnSequence pn;
  pn.register_width = register_width;
  pn.polynomial = polynomial;
  pn.init_state = init_state & state_mask;
  pn.chips.reserve(period);

  std::uint32_t state = pn.init_state;
  for (std::size_t i = 0; i < period; ++i) {
    pn.chips.push_back((state & 1u) ? 1 : -1);
    const std::uint32_t fb =
        static_cast<std::uint32_t>(std::popcount(state & tap_mask) & 1);
    state = (state >> 1) | (fb << (register_width - 1));
    if (state == pn.init_state && i + 1 < period)
      throw ConfigError("PN polynomial is not primitive (period " +
                        std::to_string(i + 1) + " < " +
                        std::to_string(period) + ")");
  }
  if (state != pn.init_state)
    throw ConfigError("PN register did not return to its initial state");
  return pn;
}

} // namespace umic
