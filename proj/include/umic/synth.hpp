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

#include "umic/mpc.hpp"
#include "umic/scenario.hpp"
#include "umic/tensor.hpp"

namespace umic {

enum class Wavefront { kSpherical, kPlanar };

// Geometric multipath synthesis: H(f) = sum_l alpha_l a_rx a_tx^T
// exp(-j 2 pi f tau_l), evaluated per frequency bin across the band (no
// center-frequency narrowband shortcut).
//
// kPlanar uses plane-wave steering from the MPC angles. kSpherical places
// each MPC geometrically: the direct path uses exact element-to-element
// distances, scattered paths use a single-bounce point solved from
// (delay, arrival angles) on the Tx-Rx ellipsoid; the given departure
// angles must agree with that bounce point or the MPC is rejected.
ChannelTensor synth_channel(const ScenarioConfig &scenario,
                            const std::vector<Mpc> &mpcs, Wavefront wavefront);

// Reference channel: i.i.d. CN(0,1) entries, reproducible by seed.
ChannelTensor iid_rayleigh(std::size_t n_rx, std::size_t n_tx,
                           std::size_t n_snapshots, std::size_t n_freq,
                           std::uint64_t seed);

} // namespace umic
