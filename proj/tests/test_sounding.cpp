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

#include <catch2/catch_amalgamated.hpp>

#include "umic/sounding.hpp"
#include "umic/synth.hpp"

using namespace umic;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

SounderResponse unity_response() {
  SounderResponse r;
  r.vsg_power_dbm = 0.0;
  r.pa_db = r.lna_db = r.ant_tx_dbi = r.ant_rx_dbi = r.cable_loss_db = 0.0;
  return r;
}

std::size_t argmax_db(const std::vector<double> &v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best])
      best = i;
  return best;
}

} // namespace

TEST_CASE("m-sequence properties", "[sounding]") {
  const PnSequence pn = gen_pn(10);
  REQUIRE(pn.length() == 1023);

  CHECK(pn.periodic_autocorrelation(0) == 1023);
  for (std::size_t lag = 1; lag < 1023; ++lag)
    CHECK(pn.periodic_autocorrelation(lag) == -1);

  int plus = 0, minus = 0;
  for (int c : pn.chips)
    (c > 0 ? plus : minus)++;
  CHECK(plus == 512);
  CHECK(minus == 511);
}

TEST_CASE("non-primitive polynomial is rejected", "[sounding]") {
  // x^10 + x^2 + 1 = (x^5 + x + 1)^2 over GF(2)
  CHECK_THROWS_AS(gen_pn(10, (1u << 10) | (1u << 2)), ConfigError);
  CHECK_THROWS_AS(gen_pn(10, (1u << 10) | (1u << 3), 0), ConfigError);
  // every width with a default stays maximal
  for (unsigned w = 5; w <= 12; ++w)
    CHECK(gen_pn(w).length() == (std::size_t{1} << w) - 1);
}

TEST_CASE("identity channel reproduces the chip waveform", "[sounding]") {
  const PnSequence pn = gen_pn(7);
  Cir cir = Cir::zeros(1, 1, pn.length(), 4e-9);
  cir.tap(0, 0, 0) = {1.0, 0.0};

  const Waveforms w = sound_link(cir, pn, unity_response(), kNegInf, 4, 1);
  REQUIRE(w.n_samples == pn.length() * 4);
  auto y = w.pair(0, 0);
  for (std::size_t i = 0; i < w.n_samples; ++i)
    CHECK(std::abs(y[i] - cxd{static_cast<double>(pn.chips[i / 4]), 0.0}) <
          1e-9);
}

TEST_CASE("tap delay maps to the expected bin", "[sounding]") {
  const PnSequence pn = gen_pn(10);
  const double d_ane = kSpeedOfLight * 8e-9; // reference delay: 2 bins
  Cir cir = Cir::zeros(1, 1, pn.length(), 4e-9);
  cir.tap(0, 0, 25) = {1.0, 0.0}; // 100 ns at 4 ns/bin

  const SounderResponse resp;
  const Waveforms w = sound_link(cir, pn, resp, kNegInf, 4, 1);
  const auto y_cal = anechoic_capture(pn, resp, d_ane, 15e9);
  const Cir rec = ota_calibrate(w.pair(0, 0), y_cal, d_ane, 15e9);
  CHECK(argmax_db(pdp(rec)) == 25);
}

TEST_CASE("two-tap power ratio survives the chain at 30 dB SNR",
          "[sounding]") {
  const PnSequence pn = gen_pn(10);
  const double d_ane = kSpeedOfLight * 8e-9;
  Cir cir = Cir::zeros(1, 1, pn.length(), 4e-9);
  cir.tap(0, 0, 10) = {1.0, 0.0};
  cir.tap(0, 0, 40) = {db_to_amp(-10.0), 0.0};

  const SounderResponse resp; // 61 dB scalar chain gain
  // floor chosen to land the strongest recovered tap near 30 dB SNR
  const Waveforms w = sound_link(cir, pn, resp, -35.0, 4, 99);
  const auto y_cal = anechoic_capture(pn, resp, d_ane, 15e9);
  const Cir rec = ota_calibrate(w.pair(0, 0), y_cal, d_ane, 15e9);
  const auto prof = pdp(rec);

  // verify the noise floor sits >= 30 dB under the peak before asserting
  double noise_acc = 0.0;
  std::size_t noise_n = 0;
  for (std::size_t k = 200; k < 900; ++k) {
    noise_acc += db_to_linear(prof[k]);
    ++noise_n;
  }
  const double noise_db = linear_to_db(noise_acc / noise_n);
  REQUIRE(prof[10] - noise_db >= 30.0);

  CHECK_THAT(prof[10] - prof[40], Catch::Matchers::WithinAbs(10.0, 0.2));
}

TEST_CASE("self-calibration returns the anechoic impulse", "[sounding]") {
  const PnSequence pn = gen_pn(10);
  const double d_ane = kSpeedOfLight * 8e-9; // bin 2
  const SounderResponse resp;
  const auto y_cal = anechoic_capture(pn, resp, d_ane, 15e9);
  const Cir rec = ota_calibrate(y_cal, y_cal, d_ane, 15e9);

  const auto prof = pdp(rec);
  const std::size_t peak = argmax_db(prof);
  CHECK(peak == 2);
  const double expect_amp = kSpeedOfLight / (4.0 * kPi * d_ane * 15e9);
  CHECK_THAT(std::abs(rec.tap(0, 0, peak)),
             Catch::Matchers::WithinRel(expect_amp, 1e-2));
  CHECK_THAT(std::arg(rec.tap(0, 0, peak)),
             Catch::Matchers::WithinAbs(
                 wrap_angle(-kTwoPi * 15e9 * d_ane / kSpeedOfLight), 1e-6));
}

TEST_CASE("front-end ripple cancels through calibration", "[sounding]") {
  const PnSequence pn = gen_pn(10);
  const double d_ane = kSpeedOfLight * 8e-9;
  Cir cir = Cir::zeros(1, 1, pn.length(), 4e-9);
  cir.tap(0, 0, 12) = std::polar(0.3, 1.1);
  cir.tap(0, 0, 57) = std::polar(0.05, -2.0);

  auto run = [&](const SounderResponse &resp) {
    const Waveforms w = sound_link(cir, pn, resp, kNegInf, 4, 1);
    const auto y_cal = anechoic_capture(pn, resp, d_ane, 15e9);
    return ota_calibrate(w.pair(0, 0), y_cal, d_ane, 15e9);
  };

  const Cir flat = run(SounderResponse{});
  SounderResponse rippled;
  rippled.g_sys.amp_db_pp = 3.0;
  rippled.g_sys.cycles = 2.5;
  rippled.g_sys.phase_rad_pp = 0.8;
  rippled.g_tx.amp_db_pp = 1.0;
  rippled.g_rx.phase_rad_pp = 0.4;
  const Cir rip = run(rippled);

  for (std::size_t k : {std::size_t{12}, std::size_t{57}}) {
    const double d_db = linear_to_db(std::norm(rip.tap(0, 0, k))) -
                        linear_to_db(std::norm(flat.tap(0, 0, k)));
    CHECK(std::abs(d_db) < 0.05);
  }
}

TEST_CASE("synthesis -> sounding -> calibration round trip", "[sounding]") {
  // bin-aligned paths through the full chain, checked against the injected
  // CIR in both delay and power
  ScenarioConfig sc;
  sc.tx_geometry = make_ula(2);
  sc.rx_geometry = make_ula(2);
  sc.rx_geometry.origin = {30.0, 0.0, 0.0};
  sc.rx_geometry.bearing_rad = kPi;
  sc.n_freq = 127;
  sc.bandwidth_hz = 250e6;

  Mpc p1, p2;
  p1.amplitude = std::polar(1e-4, 0.3);
  p1.delay_s = 16e-9; // bin 4
  p1.aaoa_rad = 0.3;
  p1.aaod_rad = -0.5;
  p2.amplitude = std::polar(2.5e-5, -1.0);
  p2.delay_s = 48e-9; // bin 12
  p2.aaoa_rad = -0.9;
  p2.aaod_rad = 0.8;
  const ChannelTensor truth = synth_channel(sc, {p1, p2}, Wavefront::kPlanar);
  const Cir cir_true = cir_from_tensor(truth);

  const PnSequence pn = gen_pn(7);
  const SounderResponse resp;
  const double d_ane = kSpeedOfLight * 8e-9;
  const Waveforms w = sound_link(cir_true, pn, resp, -100.0, 4, 5);
  const auto y_cal = anechoic_capture(pn, resp, d_ane, sc.carrier_hz,
                                      sc.bandwidth_hz);
  const Cir rec = ota_calibrate_all(w, y_cal, d_ane, sc.carrier_hz,
                                    sc.bandwidth_hz);

  REQUIRE(rec.n_rx == 2);
  REQUIRE(rec.n_tx == 2);
  for (std::size_t q = 0; q < 2; ++q)
    for (std::size_t p = 0; p < 2; ++p) {
      const auto prof = pdp(rec, q, p);
      const double peak = prof[argmax_db(prof)];
      // SNR guard
      double acc = 0.0;
      std::size_t n = 0;
      for (std::size_t k = 40; k < 120; ++k) {
        acc += db_to_linear(prof[k]);
        ++n;
      }
      REQUIRE(peak - linear_to_db(acc / n) >= 30.0);

      for (std::size_t bin : {std::size_t{4}, std::size_t{12}}) {
        const double true_db =
            linear_to_db(std::norm(cir_true.tap(q, p, bin)));
        CHECK_THAT(prof[bin], Catch::Matchers::WithinAbs(true_db, 0.1));
      }
    }
}

TEST_CASE("two taps 8 ns apart resolve as distinct maxima", "[sounding]") {
  const PnSequence pn = gen_pn(10);
  const double d_ane = kSpeedOfLight * 8e-9;
  Cir cir = Cir::zeros(1, 1, pn.length(), 4e-9);
  cir.tap(0, 0, 20) = {1.0, 0.0};
  cir.tap(0, 0, 22) = {0.8, 0.2};

  const SounderResponse resp;
  const Waveforms w = sound_link(cir, pn, resp, -35.0, 4, 2);
  const auto y_cal = anechoic_capture(pn, resp, d_ane, 15e9);
  const auto prof = pdp(ota_calibrate(w.pair(0, 0), y_cal, d_ane, 15e9));

  auto is_local_max = [&](std::size_t k) {
    return prof[k] > prof[k - 1] && prof[k] > prof[k + 1];
  };
  CHECK(is_local_max(20));
  CHECK(is_local_max(22));
}

TEST_CASE("noise level and reproducibility", "[sounding]") {
  const PnSequence pn = gen_pn(10);
  Cir cir = Cir::zeros(1, 1, pn.length(), 4e-9); // silent channel
  const double floor_dbm = -90.0;

  const Waveforms w =
      sound_link(cir, pn, unity_response(), floor_dbm, 4, 31, 25);
  REQUIRE(w.n_samples >= 100000);
  double acc = 0.0;
  for (const cxd &v : w.pair(0, 0))
    acc += std::norm(v);
  const double measured_dbm =
      linear_to_db(acc / static_cast<double>(w.n_samples));
  CHECK_THAT(measured_dbm, Catch::Matchers::WithinAbs(floor_dbm, 1.0));

  const Waveforms w2 =
      sound_link(cir, pn, unity_response(), floor_dbm, 4, 31, 25);
  CHECK(std::equal(w.data.begin(), w.data.end(), w2.data.begin()));
}

TEST_CASE("pdp and threshold rule", "[sounding]") {
  Cir cir = Cir::zeros(1, 1, 8, 4e-9);
  cir.tap(0, 0, 3) = {1.0, 0.0};
  auto prof = pdp(cir);
  CHECK_THAT(prof[3], Catch::Matchers::WithinAbs(0.0, 1e-12));

  cir.tap(0, 0, 3) = {0.5, 0.0};
  prof = pdp(cir);
  CHECK_THAT(prof[3], Catch::Matchers::WithinAbs(-6.0206, 1e-3));

  // total linear power bookkeeping
  cir.tap(0, 0, 5) = {0.25, 0.25};
  double total = 0.0;
  for (double v : pdp(cir))
    total += db_to_linear(v);
  CHECK_THAT(total, Catch::Matchers::WithinRel(0.25 + 0.125, 1e-9));

  SECTION("interference-limited branch") {
    const std::vector<double> p{-85.0, -95.0, -120.0};
    const auto mask = threshold_mask(p, -60.0, -100.0); // threshold -90
    CHECK(mask == std::vector<bool>{true, false, false});
  }
  SECTION("noise-limited branch") {
    const std::vector<double> p{-63.0, -61.0};
    const auto mask = threshold_mask(p, -60.0, -65.0); // threshold -62
    CHECK(mask == std::vector<bool>{false, true});
  }
  SECTION("everything below threshold") {
    const std::vector<double> p{-120.0, -118.0};
    const auto mask = threshold_mask(p, -60.0, -100.0);
    CHECK(mask == std::vector<bool>{false, false});
  }
  SECTION("peak below noise is rejected") {
    CHECK_THROWS_AS(threshold_mask({-80.0}, -100.0, -90.0),
                    std::invalid_argument);
  }
}

TEST_CASE("calibration input validation", "[sounding]") {
  const PnSequence pn = gen_pn(7);
  const SounderResponse resp;
  const auto y_cal = anechoic_capture(pn, resp, 2.0, 15e9);
  std::vector<cxd> short_wave(y_cal.begin(), y_cal.end() - 4);
  CHECK_THROWS_AS(ota_calibrate(short_wave, y_cal, 2.0, 15e9),
                  std::invalid_argument);
  const std::vector<cxd> zeros(y_cal.size(), cxd{0.0, 0.0});
  CHECK_THROWS_AS(ota_calibrate(y_cal, zeros, 2.0, 15e9), CalibrationError);
}
