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

#include "umic/tensor.hpp"

#include <stdexcept>

namespace umic {

ChannelTensor::ChannelTensor(std::size_t n_snapshots, std::size_t n_freq,
                             std::size_t n_rx, std::size_t n_tx,
                             std::vector<double> freq_axis_hz,
                             std::vector<double> snapshot_axis_s)
    : n_s_(n_snapshots), n_f_(n_freq), n_rx_(n_rx), n_tx_(n_tx),
      freq_hz_(std::move(freq_axis_hz)), snapshot_s_(std::move(snapshot_axis_s)) {
  if (n_s_ < 1 || n_f_ < 1 || n_rx_ < 1 || n_tx_ < 1)
    throw std::invalid_argument("channel tensor dimensions must be >= 1");
  if (freq_hz_.size() != n_f_)
    throw std::invalid_argument("frequency axis length mismatch");
  if (snapshot_s_.empty()) {
    snapshot_s_.resize(n_s_);
    for (std::size_t j = 0; j < n_s_; ++j)
      snapshot_s_[j] = static_cast<double>(j);
  }
  if (snapshot_s_.size() != n_s_)
    throw std::invalid_argument("snapshot axis length mismatch");
  check_axes();
  data_.assign(n_s_ * n_f_ * n_rx_ * n_tx_, cxd{0.0, 0.0});
}

void ChannelTensor::check_axes() const {
  if (n_f_ < 2)
    return;
  const double step = freq_hz_[1] - freq_hz_[0];
  if (step <= 0.0)
    throw std::invalid_argument("frequency axis must be strictly increasing");
  for (std::size_t k = 1; k < n_f_; ++k) {
    const double s = freq_hz_[k] - freq_hz_[k - 1];
    if (s <= 0.0 || std::abs(s - step) > 1e-6 * step)
      throw std::invalid_argument("frequency axis must be uniformly spaced");
  }
}

double ChannelTensor::total_energy() const {
  double e = 0.0;
  for (const cxd &v : data_)
    e += std::norm(v);
  return e;
}

ChannelTensor ChannelTensor::decimate_freq(std::size_t step) const {
  if (step == 0)
    throw std::invalid_argument("decimation step must be >= 1");
  const std::size_t nf = (n_f_ + step - 1) / step;
  std::vector<double> axis(nf);
  for (std::size_t k = 0; k < nf; ++k)
    axis[k] = freq_hz_[k * step];
  ChannelTensor out(n_s_, nf, n_rx_, n_tx_, std::move(axis), snapshot_s_);
  for (std::size_t j = 0; j < n_s_; ++j)
    for (std::size_t k = 0; k < nf; ++k)
      for (std::size_t q = 0; q < n_rx_; ++q)
        for (std::size_t p = 0; p < n_tx_; ++p)
          out.at(j, k, q, p) = at(j, k * step, q, p);
  return out;
}

ChannelTensor ChannelTensor::spatial_window(std::size_t q0, std::size_t nq,
                                            std::size_t p0,
                                            std::size_t np) const {
  if (q0 + nq > n_rx_ || p0 + np > n_tx_)
    throw std::invalid_argument("spatial window exceeds tensor dimensions");
  ChannelTensor out(n_s_, n_f_, nq, np, freq_hz_, snapshot_s_);
  for (std::size_t j = 0; j < n_s_; ++j)
    for (std::size_t k = 0; k < n_f_; ++k)
      for (std::size_t q = 0; q < nq; ++q)
        for (std::size_t p = 0; p < np; ++p)
          out.at(j, k, q, p) = at(j, k, q0 + q, p0 + p);
  return out;
}

std::vector<double> make_freq_axis(double carrier_hz, double bandwidth_hz,
                                   std::size_t n_freq) {
  if (n_freq < 1 || bandwidth_hz <= 0.0 || carrier_hz <= bandwidth_hz / 2.0)
    throw std::invalid_argument("bad frequency axis parameters");
  std::vector<double> axis(n_freq);
  const double step = bandwidth_hz / static_cast<double>(n_freq);
  const double mid = 0.5 * static_cast<double>(n_freq - 1);
  for (std::size_t k = 0; k < n_freq; ++k)
    axis[k] = carrier_hz + (static_cast<double>(k) - mid) * step;
  return axis;
}

} // namespace umic
