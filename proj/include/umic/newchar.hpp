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
#include <span>
#include <vector>

#include "umic/tensor.hpp"

namespace umic {

// Per-element power and unwrapped phase of one path across the aperture.
struct AperturePathTrace {
  std::vector<double> element_index;
  std::vector<double> power_db;
  std::vector<double> phase_rad; // unwrapped along the element axis
};

struct ApertureTrendFit {
  double power_std_db = 0.0;
  double power_linfit_rmse_db = 0.0;
  double phase_linfit_rmse_rad = 0.0;
  double phase_quadfit_rmse_rad = 0.0;
};

// 1-D phase unwrap (adjacent steps folded into (-pi, pi]).
std::vector<double> unwrap_phase(std::span<const double> phase_rad);

// Degree-1 and degree-2 least-squares trends of power and phase versus
// element index. A near-field spherical wavefront shows up as a quadratic
// phase residual advantage and a larger power spread.
ApertureTrendFit fit_aperture_trends(const AperturePathTrace &trace);

// Spatial cross-correlation |<a, b>| / (||a|| ||b||), in [0, 1].
double sccf(std::span<const cxd> h_a, std::span<const cxd> h_b);

enum class RxPairing { kAllRxPairs, kAdjacentRx };

// Cumulative SCCF of a tensor: SCCF vectors run along the frequency axis;
// the average covers the selected receive pair set, all transmit elements
// and all snapshots.
double cscf(const ChannelTensor &tensor,
            RxPairing pairing = RxPairing::kAllRxPairs);

// Channel tensors measured at M positions, the ensemble over which the
// hardening statistic is formed.
struct HardeningEnsemble {
  std::vector<ChannelTensor> tensors;
  std::vector<std::size_t> rx_subset_sizes;

  void validate() const; // M >= 2 and shared (n_freq, n_rx, n_tx)
};

// Position-domain channel-hardening metric: per point the tensor is energy
// normalized, the first n_rx receive rows are kept, and per frequency the
// variance over points of the squared Frobenius gain is divided by its
// squared mean; the median over frequency is returned.
double chd(const HardeningEnsemble &ensemble, std::size_t n_rx);

// Random receive subset variant (seeded), for sensitivity checks.
double chd_random_subset(const HardeningEnsemble &ensemble, std::size_t n_rx,
                         std::uint64_t seed);

} // namespace umic
