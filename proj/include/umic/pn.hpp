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
#include <vector>

#include "umic/common.hpp"

namespace umic {

// Maximal-length +-1 sounding sequence from a Fibonacci LFSR. The
// polynomial mask has bit i set for the x^i feedback term (the constant
// term is implicit), e.g. x^10 + x^3 + 1 -> (1<<10)|(1<<3).
struct PnSequence {
  std::vector<int> chips;       // +1 / -1
  unsigned register_width = 0;
  std::uint32_t polynomial = 0;
  std::uint32_t init_state = 0;

  std::size_t length() const { return chips.size(); }

  // Periodic autocorrelation sum_n c[n] c[n+lag]; N at lag 0, -1 otherwise
  // for a maximal-length sequence.
  long periodic_autocorrelation(std::size_t lag) const;
};

// Default primitive feedback polynomial for a register width, when known.
std::uint32_t default_pn_polynomial(unsigned register_width);

// Generates the m-sequence and verifies maximal length (period 2^m - 1);
// a shorter period means the polynomial is not primitive and raises
// ConfigError. Register bit 1 maps to chip +1.
PnSequence gen_pn(unsigned register_width, std::uint32_t polynomial = 0,
                  std::uint32_t init_state = 1);

} // namespace umic
