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

#include <limits>
#include <vector>

#include "umic/geometry.hpp"
#include "umic/mpc.hpp"
#include "umic/tensor.hpp"

namespace umic {

// Space-alternating EM multipath estimation over a channel tensor, with
// subarray windowing for near-field processing (16 x 32 near field,
// 16 x 128 far field at the full sounder array sizes).
struct SageConfig {
  std::size_t window_rx = 16;
  std::size_t window_tx = 32;
  std::size_t max_paths = 10;
  double dynamic_range_db = 30.0;
  double conv_tol = 1e-4; // relative residual-power change
  std::size_t max_iter = 50;
  double delay_grid_s = 2e-9;
  double angle_grid_rad = deg_to_rad(1.0);

  // Search bounds. A zero delay_max_s selects the full unambiguous span of
  // the tensor's frequency grid. Collapsing an angle range to a point pins
  // that coordinate, which is how linear-array estimates stay identifiable.
  double delay_min_s = 0.0;
  double delay_max_s = 0.0;
  double az_min_rad = -kPi, az_max_rad = kPi;
  double el_min_rad = -kPi / 2, el_max_rad = kPi / 2;

  // Per-entry noise power for the max(Pm - 30, Pn + 3) pruning rule, on the
  // 10 log10 |alpha|^2 scale. Disabled when left at -inf.
  double noise_power_db = -std::numeric_limits<double>::infinity();

  // Cross-window cluster gates for merging per-window estimates.
  double merge_delay_gate_s = 4e-9;
  double merge_angle_gate_rad = deg_to_rad(2.0);
};

struct SageResult {
  std::vector<Mpc> mpcs; // sorted by descending |amplitude|
  double residual_power_db =
      -std::numeric_limits<double>::infinity(); // mean per-entry
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> residual_history_db; // non-increasing per sweep
};

// Tiling rule for one axis: windows at offsets 0, w, 2w, ...; if a
// remainder is left the final window is placed flush at n - w (overlap).
std::vector<std::size_t> window_offsets(std::size_t n, std::size_t w);

struct SubTensor {
  ChannelTensor tensor;
  std::size_t rx_offset = 0;
  std::size_t tx_offset = 0;
};

std::vector<SubTensor> subarray_partition(const ChannelTensor &tensor,
                                          std::size_t window_rx,
                                          std::size_t window_tx);

// Runs successive path detection plus SAGE coordinate refinement per
// subarray window, then merges per-window estimates by clustering within
// the configured (delay, arrival-azimuth) gates. Snapshots are averaged
// coherently before estimation.
SageResult sage_estimate(const ChannelTensor &tensor,
                         const ArrayGeometry &tx_geometry,
                         const ArrayGeometry &rx_geometry,
                         const SageConfig &config);

} // namespace umic
