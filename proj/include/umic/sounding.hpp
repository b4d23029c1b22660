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

#include "umic/common.hpp"
#include "umic/pn.hpp"
#include "umic/tensor.hpp"

namespace umic {

// Smooth in-band ripple used to model a non-flat front-end response:
// amplitude ripple in dB peak-to-peak plus a phase ripple, both sinusoidal
// across the band.
struct RippleSpec {
  double amp_db_pp = 0.0;
  double phase_rad_pp = 0.0;
  double cycles = 1.0;
  double phase_offset_rad = 0.0;

  cxd response(double band_frac) const; // band_frac in [-0.5, 0.5]
};

// Sounder front end: scalar link-budget gains plus complex frequency
// responses for the system, transmit and receive chains. Defaults follow
// the 250 MHz time-domain sounder configuration.
struct SounderResponse {
  double vsg_power_dbm = -15.0;
  double pa_db = 30.0;
  double lna_db = 35.0;
  double ant_tx_dbi = 5.0;
  double ant_rx_dbi = 5.0;
  double cable_loss_db = 9.0;
  double switch_isolation_db = 40.0; // recorded, not simulated

  RippleSpec g_sys;
  RippleSpec g_tx;
  RippleSpec g_rx;

  double scalar_gain_db() const {
    return pa_db + lna_db + ant_tx_dbi + ant_rx_dbi - cable_loss_db;
  }
  // Combined complex response g_sys*g_tx*g_rx at a band position.
  cxd chain_response(double band_frac) const;
};

// Baseband CIR taps for a set of (rx, tx) pairs, one tap per delay bin of
// width 1/bandwidth. Stored flat as [q][p][bin].
struct Cir {
  std::size_t n_rx = 0, n_tx = 0, n_bins = 0;
  double bin_width_s = 0.0;
  std::vector<cxd> taps;

  static Cir zeros(std::size_t n_rx, std::size_t n_tx, std::size_t n_bins,
                   double bin_width_s);
  cxd &tap(std::size_t q, std::size_t p, std::size_t bin) {
    return taps[(q * n_tx + p) * n_bins + bin];
  }
  const cxd &tap(std::size_t q, std::size_t p, std::size_t bin) const {
    return taps[(q * n_tx + p) * n_bins + bin];
  }
  std::span<const cxd> pair(std::size_t q, std::size_t p) const {
    return {taps.data() + (q * n_tx + p) * n_bins, n_bins};
  }
};

// Received sounding waveforms, one complex stream per (rx, tx) pair.
struct Waveforms {
  std::size_t n_rx = 0, n_tx = 0, n_samples = 0;
  double sample_rate_hz = 0.0;
  std::vector<cxd> data; // [q][p][sample]

  std::span<const cxd> pair(std::size_t q, std::size_t p) const {
    return {data.data() + (q * n_tx + p) * n_samples, n_samples};
  }
  std::span<cxd> pair(std::size_t q, std::size_t p) {
    return {data.data() + (q * n_tx + p) * n_samples, n_samples};
  }
};

// Centered in-band frequency offsets: n bins spaced bandwidth/n.
std::vector<double> inband_offsets_hz(double bandwidth_hz, std::size_t n_bins);

// CTF samples on the centered in-band grid -> delay taps (and back).
std::vector<cxd> ctf_to_cir(std::span<const cxd> ctf);
std::vector<cxd> cir_to_ctf(std::span<const cxd> taps);

// MIMO CIR for one snapshot of a channel tensor (IDFT along frequency).
Cir cir_from_tensor(const ChannelTensor &t, std::size_t snapshot = 0);

// CTF tensor from a MIMO CIR on the matching in-band grid.
ChannelTensor tensor_from_cir(const Cir &cir, double carrier_hz);

// Emulates one switched-array sounding pass: for every (rx, tx) pair the
// oversampled rectangular-chip PN waveform is passed through the front-end
// chain and the pair's CIR (circular over the PN period), then AWGN at the
// configured floor is added. Output length is n_periods * pn_len * oversample
// per pair; deterministic for a given seed.
Waveforms sound_link(const Cir &cir_true, const PnSequence &pn,
                     const SounderResponse &response, double noise_floor_dbm,
                     unsigned oversample = 4, std::uint64_t seed = 1,
                     unsigned n_periods = 1);

// Coherent average of an integer number of periods down to one period.
std::vector<cxd> average_periods(std::span<const cxd> wave,
                                 std::size_t period_samples);

enum class CalibrationReference {
  kAbsolute,        // taps approximate the true channel h(tau)
  kAnechoicRelative // taps are gains relative to the anechoic reference
};

// OTA calibration of one (rx, tx) sounding against the anechoic-chamber
// reference capture: h = IDFT( H_ane * Y Ycal^* / |Ycal|^2 ) on the in-band
// grid. Both waveforms must hold a single period at the same rate. With
// kAnechoicRelative the H_ane factor is omitted, which is the convention
// expected by the omni path-loss extraction.
Cir ota_calibrate(std::span<const cxd> y_meas, std::span<const cxd> y_cal,
                  double d_ane_m, double carrier_hz,
                  double bandwidth_hz = 250e6, unsigned oversample = 4,
                  CalibrationReference reference =
                      CalibrationReference::kAbsolute);

// Pairwise calibration of full MIMO captures; y_cal is shared by all pairs.
Cir ota_calibrate_all(const Waveforms &y_meas, std::span<const cxd> y_cal,
                      double d_ane_m, double carrier_hz,
                      double bandwidth_hz = 250e6, unsigned oversample = 4,
                      CalibrationReference reference =
                          CalibrationReference::kAbsolute);

// Anechoic reference capture for the same sounder settings: the chamber is
// free space at d_ane, so the reference CIR is a pure delayed attenuated
// impulse. Noiseless by default.
std::vector<cxd> anechoic_capture(const PnSequence &pn,
                                  const SounderResponse &response,
                                  double d_ane_m, double carrier_hz,
                                  double bandwidth_hz = 250e6,
                                  unsigned oversample = 4);

// Power per delay bin in dB, averaged over all (rx, tx) pairs.
std::vector<double> pdp(const Cir &cir);
std::vector<double> pdp(const Cir &cir, std::size_t q, std::size_t p);

// Noise-threshold rule: keep bins with power >= max(peak - dynamic_range,
// noise + noise_margin).
std::vector<bool> threshold_mask(const std::vector<double> &pdp_db,
                                 double peak_db, double noise_db,
                                 double dynamic_range_db = 30.0,
                                 double noise_margin_db = 3.0);

} // namespace umic
