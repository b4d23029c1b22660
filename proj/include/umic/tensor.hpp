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

// Complex channel samples H(j, k) indexed [snapshot][frequency][rx][tx],
// stored row-major in that order. The frequency axis carries absolute Hz
// and must be strictly increasing with uniform spacing.
class ChannelTensor {
public:
  ChannelTensor() = default;
  ChannelTensor(std::size_t n_snapshots, std::size_t n_freq, std::size_t n_rx,
                std::size_t n_tx, std::vector<double> freq_axis_hz,
                std::vector<double> snapshot_axis_s = {});

  std::size_t n_snapshots() const { return n_s_; }
  std::size_t n_freq() const { return n_f_; }
  std::size_t n_rx() const { return n_rx_; }
  std::size_t n_tx() const { return n_tx_; }
  std::size_t size() const { return data_.size(); }

  cxd &at(std::size_t j, std::size_t k, std::size_t q, std::size_t p) {
    return data_[((j * n_f_ + k) * n_rx_ + q) * n_tx_ + p];
  }
  const cxd &at(std::size_t j, std::size_t k, std::size_t q,
                std::size_t p) const {
    return data_[((j * n_f_ + k) * n_rx_ + q) * n_tx_ + p];
  }

  std::vector<cxd> &data() { return data_; }
  const std::vector<cxd> &data() const { return data_; }
  const std::vector<double> &freq_axis_hz() const { return freq_hz_; }
  const std::vector<double> &snapshot_axis_s() const { return snapshot_s_; }

  double freq_spacing_hz() const {
    return n_f_ > 1 ? freq_hz_[1] - freq_hz_[0] : 0.0;
  }

  double total_energy() const;

  // Frequency-decimated copy (every `step`-th bin), keeping the axis uniform.
  ChannelTensor decimate_freq(std::size_t step) const;

  // Receive/transmit element windows [q0, q0+nq) x [p0, p0+np).
  ChannelTensor spatial_window(std::size_t q0, std::size_t nq, std::size_t p0,
                               std::size_t np) const;

private:
  void check_axes() const;

  std::size_t n_s_ = 0, n_f_ = 0, n_rx_ = 0, n_tx_ = 0;
  std::vector<cxd> data_;
  std::vector<double> freq_hz_;
  std::vector<double> snapshot_s_;
};

// Uniform frequency grid of n bins centered on the carrier and spanning the
// bandwidth: f_k = fc + (k - (n-1)/2) * B / n.
std::vector<double> make_freq_axis(double carrier_hz, double bandwidth_hz,
                                   std::size_t n_freq);

} // namespace umic
