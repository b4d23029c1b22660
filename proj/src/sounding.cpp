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

#include "umic/sounding.hpp"

#include <armadillo>
#include <stdexcept>

#include "umic/rng.hpp"

namespace umic {

namespace {

arma::cx_vec to_arma(std::span<const cxd> v) {
  arma::cx_vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = v[i];
  return out;
}

std::vector<cxd> from_arma(const arma::cx_vec &v) {
  return std::vector<cxd>(v.begin(), v.end());
}

// Frequency of waveform FFT bin b as a signed baseband offset.
double bin_offset_hz(std::size_t b, std::size_t n, double sample_rate_hz) {
  const double f = static_cast<double>(b) / static_cast<double>(n);
  return (f < 0.5 ? f : f - 1.0) * sample_rate_hz;
}

cxd anechoic_ctf(double offset_hz, double carrier_hz, double d_ane_m) {
  const double f_abs = carrier_hz + offset_hz;
  const double tau0 = d_ane_m / kSpeedOfLight;
  const double mag = kSpeedOfLight / (4.0 * kPi * d_ane_m * f_abs);
  return std::polar(mag, -kTwoPi * f_abs * tau0);
}

} // namespace

cxd RippleSpec::response(double band_frac) const {
  if (amp_db_pp == 0.0 && phase_rad_pp == 0.0)
    return {1.0, 0.0};
  const double arg = kTwoPi * cycles * band_frac + phase_offset_rad;
  const double s = std::sin(arg);
  return std::polar(db_to_amp(0.5 * amp_db_pp * s), 0.5 * phase_rad_pp * s);
}

cxd SounderResponse::chain_response(double band_frac) const {
  return g_sys.response(band_frac) * g_tx.response(band_frac) *
         g_rx.response(band_frac);
}

Cir Cir::zeros(std::size_t n_rx, std::size_t n_tx, std::size_t n_bins,
               double bin_width_s) {
  if (n_rx == 0 || n_tx == 0 || n_bins == 0 || bin_width_s <= 0.0)
    throw std::invalid_argument("bad CIR dimensions");
  Cir c;
  c.n_rx = n_rx;
  c.n_tx = n_tx;
  c.n_bins = n_bins;
  c.bin_width_s = bin_width_s;
  c.taps.assign(n_rx * n_tx * n_bins, cxd{0.0, 0.0});
  return c;
}

std::vector<double> inband_offsets_hz(double bandwidth_hz,
                                      std::size_t n_bins) {
  if (bandwidth_hz <= 0.0 || n_bins == 0)
    throw std::invalid_argument("bad in-band grid parameters");
  std::vector<double> off(n_bins);
  const double step = bandwidth_hz / static_cast<double>(n_bins);
  const double mid = 0.5 * static_cast<double>(n_bins - 1);
  for (std::size_t i = 0; i < n_bins; ++i)
    off[i] = (static_cast<double>(i) - mid) * step;
  return off;
}

// Centered-grid IDFT: taps[k] = (1/P) sum_i H_i exp(+j 2 pi (i - c0) k / P)
// with c0 = (P-1)/2, so delay bin k pairs with frequency offset index i.
std::vector<cxd> ctf_to_cir(std::span<const cxd> ctf) {
  const std::size_t n = ctf.size();
  if (n == 0)
    throw std::invalid_argument("empty CTF");
  arma::cx_vec h = arma::ifft(to_arma(ctf));
  const double c0 = 0.5 * static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k)
    h[k] *= std::polar(1.0, -kTwoPi * c0 * static_cast<double>(k) /
                                static_cast<double>(n));
  return from_arma(h);
}

std::vector<cxd> cir_to_ctf(std::span<const cxd> taps) {
  const std::size_t n = taps.size();
  if (n == 0)
    throw std::invalid_argument("empty CIR");
  arma::cx_vec t(n);
  const double c0 = 0.5 * static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k)
    t[k] = taps[k] * std::polar(1.0, kTwoPi * c0 * static_cast<double>(k) /
                                         static_cast<double>(n));
  return from_arma(arma::fft(t));
}

Cir cir_from_tensor(const ChannelTensor &t, std::size_t snapshot) {
  if (snapshot >= t.n_snapshots())
    throw std::invalid_argument("snapshot index out of range");
  if (t.n_freq() < 2)
    throw std::invalid_argument("need at least two frequency bins");
  const double span = t.freq_spacing_hz() * static_cast<double>(t.n_freq());
  Cir cir = Cir::zeros(t.n_rx(), t.n_tx(), t.n_freq(), 1.0 / span);
  std::vector<cxd> ctf(t.n_freq());
  for (std::size_t q = 0; q < t.n_rx(); ++q)
    for (std::size_t p = 0; p < t.n_tx(); ++p) {
      for (std::size_t k = 0; k < t.n_freq(); ++k)
        ctf[k] = t.at(snapshot, k, q, p);
      const auto taps = ctf_to_cir(ctf);
      for (std::size_t k = 0; k < t.n_freq(); ++k)
        cir.tap(q, p, k) = taps[k];
    }
  return cir;
}

ChannelTensor tensor_from_cir(const Cir &cir, double carrier_hz) {
  const double bandwidth = 1.0 / cir.bin_width_s;
  ChannelTensor t(1, cir.n_bins, cir.n_rx, cir.n_tx,
                  make_freq_axis(carrier_hz, bandwidth, cir.n_bins));
  for (std::size_t q = 0; q < cir.n_rx; ++q)
    for (std::size_t p = 0; p < cir.n_tx; ++p) {
      const auto ctf = cir_to_ctf(cir.pair(q, p));
      for (std::size_t k = 0; k < cir.n_bins; ++k)
        t.at(0, k, q, p) = ctf[k];
    }
  return t;
}

Waveforms sound_link(const Cir &cir_true, const PnSequence &pn,
                     const SounderResponse &response, double noise_floor_dbm,
                     unsigned oversample, std::uint64_t seed,
                     unsigned n_periods) {
  if (oversample < 1)
    throw std::invalid_argument("oversample must be >= 1");
  if (n_periods < 1)
    throw std::invalid_argument("n_periods must be >= 1");
  if (cir_true.n_bins > pn.length())
    throw std::invalid_argument(
        "CIR span exceeds one PN period (ambiguous delays)");

  const std::size_t chips = pn.length();
  const std::size_t period = chips * oversample;
  const double bandwidth = 1.0 / cir_true.bin_width_s;
  const double sample_rate = bandwidth * oversample;

  // Transmit spectrum: oversampled rectangular chips, scaled to the VSG
  // output power and the scalar link-budget gain.
  arma::cx_vec chip_wave(period);
  const double amp = db_to_amp(response.scalar_gain_db()) *
                     std::sqrt(db_to_linear(response.vsg_power_dbm));
  for (std::size_t i = 0; i < period; ++i)
    chip_wave[i] = amp * static_cast<double>(pn.chips[i / oversample]);
  arma::cx_vec tx_spec = arma::fft(chip_wave);
  for (std::size_t b = 0; b < period; ++b)
    tx_spec[b] *= response.chain_response(
        bin_offset_hz(b, period, sample_rate) / bandwidth);

  // Discrete channel: taps every `oversample` samples, circular over one
  // period, evaluated as a P-point DFT indexed modulo the chip count.
  Waveforms out;
  out.n_rx = cir_true.n_rx;
  out.n_tx = cir_true.n_tx;
  out.n_samples = period * n_periods;
  out.sample_rate_hz = sample_rate;
  out.data.assign(out.n_rx * out.n_tx * out.n_samples, cxd{0.0, 0.0});

  const bool noiseless = std::isinf(noise_floor_dbm) && noise_floor_dbm < 0.0;
  const double noise_sigma =
      noiseless ? 0.0 : std::sqrt(db_to_linear(noise_floor_dbm) / 2.0);

  Rng rng(seed);
  arma::cx_vec taps(cir_true.n_bins);
  arma::cx_vec y_spec(period);
  for (std::size_t q = 0; q < out.n_rx; ++q)
    for (std::size_t p = 0; p < out.n_tx; ++p) {
      for (std::size_t k = 0; k < cir_true.n_bins; ++k)
        taps[k] = cir_true.tap(q, p, k);
      arma::cx_vec chan = arma::fft(taps); // length n_bins
      for (std::size_t b = 0; b < period; ++b)
        y_spec[b] = tx_spec[b] * chan[b % cir_true.n_bins];
      arma::cx_vec y = arma::ifft(y_spec);

      Rng pair_rng = rng.fork(q * out.n_tx + p);
      auto dst = out.pair(q, p);
      for (unsigned r = 0; r < n_periods; ++r)
        for (std::size_t i = 0; i < period; ++i) {
          cxd s = y[i];
          if (!noiseless)
            s += cxd{noise_sigma * pair_rng.normal(),
                     noise_sigma * pair_rng.normal()};
          dst[r * period + i] = s;
        }
    }
  return out;
}

std::vector<cxd> average_periods(std::span<const cxd> wave,
                                 std::size_t period_samples) {
  if (period_samples == 0 || wave.size() % period_samples != 0)
    throw std::invalid_argument("waveform is not a whole number of periods");
  const std::size_t reps = wave.size() / period_samples;
  std::vector<cxd> out(period_samples, cxd{0.0, 0.0});
  for (std::size_t r = 0; r < reps; ++r)
    for (std::size_t i = 0; i < period_samples; ++i)
      out[i] += wave[r * period_samples + i];
  for (cxd &v : out)
    v /= static_cast<double>(reps);
  return out;
}

Cir ota_calibrate(std::span<const cxd> y_meas, std::span<const cxd> y_cal,
                  double d_ane_m, double carrier_hz, double bandwidth_hz,
                  unsigned oversample, CalibrationReference reference) {
  if (y_meas.size() != y_cal.size() || y_meas.empty())
    throw std::invalid_argument("waveform lengths differ or are empty");
  if (d_ane_m <= 0.0)
    throw std::invalid_argument("anechoic reference distance must be > 0");
  if (oversample < 1 || y_meas.size() % oversample != 0)
    throw std::invalid_argument("waveform length is not a multiple of the "
                                "oversampling factor");
  const std::size_t period = y_meas.size();
  const std::size_t n_bins = period / oversample;
  if (n_bins % 2 == 0)
    throw std::invalid_argument("in-band grid requires an odd PN length");

  arma::cx_vec ym = arma::fft(to_arma(y_meas));
  arma::cx_vec yc = arma::fft(to_arma(y_cal));

  // In-band bins: offset index i maps to DFT bin (i - c0) mod period.
  const std::size_t c0 = (n_bins - 1) / 2;
  const auto offsets = inband_offsets_hz(bandwidth_hz, n_bins);

  double peak = 0.0;
  for (std::size_t i = 0; i < n_bins; ++i) {
    const std::size_t b = (i >= c0) ? (i - c0) : (period + i - c0);
    peak = std::max(peak, std::norm(yc[b]));
  }
  if (peak <= 0.0)
    throw CalibrationError("calibration spectrum is identically zero");
  const double floor = 1e-18 * peak;

  std::vector<cxd> ctf(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) {
    const std::size_t b = (i >= c0) ? (i - c0) : (period + i - c0);
    const double denom = std::norm(yc[b]);
    if (denom < floor)
      throw CalibrationError("calibration spectrum vanishes in-band at bin " +
                             std::to_string(i));
    cxd r = ym[b] * std::conj(yc[b]) / denom;
    if (reference == CalibrationReference::kAbsolute)
      r *= anechoic_ctf(offsets[i], carrier_hz, d_ane_m);
    ctf[i] = r;
  }

  Cir cir = Cir::zeros(1, 1, n_bins, 1.0 / bandwidth_hz);
  const auto taps = ctf_to_cir(ctf);
  for (std::size_t k = 0; k < n_bins; ++k)
    cir.tap(0, 0, k) = taps[k];
  return cir;
}

Cir ota_calibrate_all(const Waveforms &y_meas, std::span<const cxd> y_cal,
                      double d_ane_m, double carrier_hz, double bandwidth_hz,
                      unsigned oversample, CalibrationReference reference) {
  Cir out;
  for (std::size_t q = 0; q < y_meas.n_rx; ++q)
    for (std::size_t p = 0; p < y_meas.n_tx; ++p) {
      Cir one = ota_calibrate(y_meas.pair(q, p), y_cal, d_ane_m, carrier_hz,
                              bandwidth_hz, oversample, reference);
      if (q == 0 && p == 0)
        out = Cir::zeros(y_meas.n_rx, y_meas.n_tx, one.n_bins,
                         one.bin_width_s);
      for (std::size_t k = 0; k < one.n_bins; ++k)
        out.tap(q, p, k) = one.tap(0, 0, k);
    }
  return out;
}

std::vector<cxd> anechoic_capture(const PnSequence &pn,
                                  const SounderResponse &response,
                                  double d_ane_m, double carrier_hz,
                                  double bandwidth_hz, unsigned oversample) {
  if (d_ane_m <= 0.0)
    throw std::invalid_argument("anechoic reference distance must be > 0");
  const std::size_t n_bins = pn.length();
  const auto offsets = inband_offsets_hz(bandwidth_hz, n_bins);
  std::vector<cxd> ctf(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i)
    ctf[i] = anechoic_ctf(offsets[i], carrier_hz, d_ane_m);

  Cir cir = Cir::zeros(1, 1, n_bins, 1.0 / bandwidth_hz);
  const auto taps = ctf_to_cir(ctf);
  for (std::size_t k = 0; k < n_bins; ++k)
    cir.tap(0, 0, k) = taps[k];

  const double neg_inf = -std::numeric_limits<double>::infinity();
  Waveforms w = sound_link(cir, pn, response, neg_inf, oversample, 0, 1);
  const auto span = w.pair(0, 0);
  return std::vector<cxd>(span.begin(), span.end());
}

std::vector<double> pdp(const Cir &cir) {
  std::vector<double> out(cir.n_bins);
  const double scale = 1.0 / static_cast<double>(cir.n_rx * cir.n_tx);
  for (std::size_t k = 0; k < cir.n_bins; ++k) {
    double acc = 0.0;
    for (std::size_t q = 0; q < cir.n_rx; ++q)
      for (std::size_t p = 0; p < cir.n_tx; ++p)
        acc += std::norm(cir.tap(q, p, k));
    out[k] = linear_to_db(acc * scale);
  }
  return out;
}

std::vector<double> pdp(const Cir &cir, std::size_t q, std::size_t p) {
  std::vector<double> out(cir.n_bins);
  for (std::size_t k = 0; k < cir.n_bins; ++k)
    out[k] = linear_to_db(std::norm(cir.tap(q, p, k)));
  return out;
}

std::vector<bool> threshold_mask(const std::vector<double> &pdp_db,
                                 double peak_db, double noise_db,
                                 double dynamic_range_db,
                                 double noise_margin_db) {
  if (peak_db < noise_db)
    throw std::invalid_argument("peak power below noise power");
  const double thr =
      std::max(peak_db - dynamic_range_db, noise_db + noise_margin_db);
  std::vector<bool> mask(pdp_db.size());
  for (std::size_t i = 0; i < pdp_db.size(); ++i)
    mask[i] = pdp_db[i] >= thr;
  return mask;
}

} // namespace umic
