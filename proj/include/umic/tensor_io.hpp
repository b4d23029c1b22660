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

#include <string>

#include "umic/tensor.hpp"

namespace umic {

// Binary tensor blob: header of magic "UMCT" plus version, N_s, N_f, N_Rx,
// N_Tx as little-endian u32, then interleaved little-endian float32
// (re, im) pairs in [j][k][q][p] row-major order. Values are stored at
// float32 precision; a saved file reloads bit-exactly.
inline constexpr char kTensorMagic[4] = {'U', 'M', 'C', 'T'};
inline constexpr std::uint32_t kTensorFormatVersion = 1;

void save_tensor(const std::string &path, const ChannelTensor &tensor);

// Reload a blob. When carrier/bandwidth are given the frequency axis is
// reconstructed on the centered grid; otherwise a unit index axis is used
// (the blob itself carries no axes).
ChannelTensor load_tensor(const std::string &path, double carrier_hz = 0.0,
                          double bandwidth_hz = 0.0);

} // namespace umic
