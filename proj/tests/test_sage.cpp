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

#include <algorithm>

#include <catch2/catch_amalgamated.hpp>

#include "umic/rng.hpp"
#include "umic/sage.hpp"
#include "umic/synth.hpp"

using namespace umic;

namespace {

// ULA-to-ULA test link; angles are azimuth-only, so the estimator runs
// with the elevation coordinate pinned and the front half-space searched.
ScenarioConfig ula_link(std::size_t n_rx, std::size_t n_tx,
                        std::size_t n_freq) {
  ScenarioConfig sc;
  sc.tx_geometry = make_ula(n_tx);
  sc.rx_geometry = make_ula(n_rx);
  sc.rx_geometry.origin = {30.0, 0.0, 0.0};
  sc.rx_geometry.bearing_rad = kPi;
  sc.n_freq = n_freq;
  return sc;
}

SageConfig ula_sage(std::size_t n_rx, std::size_t n_tx) {
  SageConfig cfg;
  cfg.window_rx = n_rx;
  cfg.window_tx = n_tx;
  cfg.el_min_rad = cfg.el_max_rad = 0.0;
  cfg.az_min_rad = -deg_to_rad(85.0);
  cfg.az_max_rad = deg_to_rad(85.0);
  return cfg;
}

void add_noise(ChannelTensor &t, double sigma2, std::uint64_t seed) {
  Rng rng(seed);
  const double s = std::sqrt(sigma2);
  for (cxd &v : t.data())
    v += s * rng.cnormal();
}

const Mpc *nearest_by_delay(const std::vector<Mpc> &mpcs, double delay_s) {
  const Mpc *best = nullptr;
  for (const Mpc &m : mpcs)
    if (!best || std::abs(m.delay_s - delay_s) < std::abs(best->delay_s - delay_s))
      best = &m;
  return best;
}

} // namespace

TEST_CASE("window tiling rule", "[sage]") {
  CHECK(window_offsets(64, 16) == std::vector<std::size_t>{0, 16, 32, 48});
  CHECK(window_offsets(128, 32) == std::vector<std::size_t>{0, 32, 64, 96});
  // remainder covered by a flush (overlapping) final window
  CHECK(window_offsets(100, 16) ==
        std::vector<std::size_t>{0, 16, 32, 48, 64, 80, 84});
  CHECK(window_offsets(16, 16) == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(window_offsets(8, 16), ConfigError);
}

TEST_CASE("subarray partition covers the tensor", "[sage]") {
  const ChannelTensor t = iid_rayleigh(10, 12, 1, 4, 3);
  const auto subs = subarray_partition(t, 4, 6);
  REQUIRE(subs.size() == 3 * 2);
  for (const SubTensor &st : subs) {
    CHECK(st.tensor.n_rx() == 4);
    CHECK(st.tensor.n_tx() == 6);
    CHECK(st.tensor.at(0, 1, 2, 3) ==
          t.at(0, 1, st.rx_offset + 2, st.tx_offset + 3));
  }
  CHECK_THROWS_AS(subarray_partition(t, 16, 4), ConfigError);
}

TEST_CASE("single noiseless path is recovered to grid accuracy", "[sage]") {
  ScenarioConfig sc = ula_link(8, 16, 64);
  Mpc truth;
  truth.amplitude = std::polar(0.7, 1.2);
  truth.delay_s = 73e-9;
  truth.aaoa_rad = deg_to_rad(24.0);
  truth.aaod_rad = deg_to_rad(-37.0);
  const ChannelTensor t = synth_channel(sc, {truth}, Wavefront::kPlanar);

  const SageConfig cfg = ula_sage(8, 16);
  const SageResult res = sage_estimate(t, sc.tx_geometry, sc.rx_geometry, cfg);

  REQUIRE(res.mpcs.size() == 1);
  const Mpc &est = res.mpcs.front();
  CHECK(std::abs(est.delay_s - truth.delay_s) < cfg.delay_grid_s);
  CHECK(angle_distance(est.aaoa_rad, truth.aaoa_rad) < cfg.angle_grid_rad);
  CHECK(angle_distance(est.aaod_rad, truth.aaod_rad) < cfg.angle_grid_rad);
  CHECK(std::abs(est.power_db() - truth.power_db()) < 0.1);
  CHECK(res.converged);
}

TEST_CASE("five separated paths at 30 dB SNR", "[sage]") {
  ScenarioConfig sc = ula_link(16, 32, 96);
  std::vector<Mpc> truth(5);
  const double delays[5] = {40e-9, 52e-9, 52e-9, 90e-9, 140e-9};
  const double aoas[5] = {10.0, -35.0, 30.0, 5.0, -20.0};
  const double aods[5] = {-8.0, 15.0, -40.0, 22.0, 3.0};
  const double powers_db[5] = {0.0, -3.0, -6.0, -9.0, -12.0};
  for (int i = 0; i < 5; ++i) {
    truth[i].amplitude = std::polar(db_to_amp(powers_db[i]), 0.31 * i);
    truth[i].delay_s = delays[i];
    truth[i].aaoa_rad = deg_to_rad(aoas[i]);
    truth[i].aaod_rad = deg_to_rad(aods[i]);
  }
  ChannelTensor t = synth_channel(sc, truth, Wavefront::kPlanar);
  add_noise(t, 1e-3, 77); // 30 dB below the strongest path

  SageConfig cfg = ula_sage(16, 32);
  cfg.max_paths = 6;
  const SageResult res = sage_estimate(t, sc.tx_geometry, sc.rx_geometry, cfg);
  REQUIRE(res.mpcs.size() >= 5);

  for (const Mpc &want : truth) {
    const Mpc *best = nullptr;
    for (const Mpc &m : res.mpcs) {
      if (std::abs(m.delay_s - want.delay_s) > 4e-9)
        continue;
      if (angle_distance(m.aaoa_rad, want.aaoa_rad) > deg_to_rad(2.0))
        continue;
      best = &m;
      break;
    }
    REQUIRE(best != nullptr);
    CHECK(std::abs(best->delay_s - want.delay_s) < 4e-9);
    CHECK(angle_distance(best->aaoa_rad, want.aaoa_rad) < deg_to_rad(2.0));
    CHECK(angle_distance(best->aaod_rad, want.aaod_rad) < deg_to_rad(2.0));
    CHECK(std::abs(best->power_db() - want.power_db()) < 0.5);
  }
}

TEST_CASE("noise-only tensor yields no paths", "[sage]") {
  ChannelTensor t = iid_rayleigh(8, 16, 1, 32, 11);
  const double scale = std::sqrt(db_to_linear(-130.0));
  for (cxd &v : t.data())
    v *= scale;

  SageConfig cfg = ula_sage(8, 16);
  cfg.noise_power_db = -130.0;
  const ArrayGeometry tx = make_ula(16), rx = make_ula(8);
  const SageResult res = sage_estimate(t, tx, rx, cfg);
  CHECK(res.mpcs.empty());
  CHECK(res.converged);
}

TEST_CASE("all-zero tensor converges empty", "[sage]") {
  ScenarioConfig sc = ula_link(4, 4, 16);
  ChannelTensor t(1, 16, 4, 4, make_freq_axis(15e9, 250e6, 16));
  const SageResult res =
      sage_estimate(t, sc.tx_geometry, sc.rx_geometry, ula_sage(4, 4));
  CHECK(res.mpcs.empty());
  CHECK(res.converged);
}

TEST_CASE("recovered paths explain the tensor energy", "[sage]") {
  ScenarioConfig sc = ula_link(8, 16, 64);
  std::vector<Mpc> truth(3);
  truth[0].amplitude = {1.0, 0.0};
  truth[0].delay_s = 20e-9;
  truth[0].aaoa_rad = deg_to_rad(12.0);
  truth[0].aaod_rad = deg_to_rad(-20.0);
  truth[1].amplitude = std::polar(0.5, 2.0);
  truth[1].delay_s = 60e-9;
  truth[1].aaoa_rad = deg_to_rad(-30.0);
  truth[1].aaod_rad = deg_to_rad(25.0);
  truth[2].amplitude = std::polar(0.25, -1.0);
  truth[2].delay_s = 110e-9;
  truth[2].aaoa_rad = deg_to_rad(45.0);
  truth[2].aaod_rad = deg_to_rad(5.0);
  const ChannelTensor t = synth_channel(sc, truth, Wavefront::kPlanar);

  SageConfig cfg = ula_sage(8, 16);
  cfg.max_paths = 3;
  const SageResult res = sage_estimate(t, sc.tx_geometry, sc.rx_geometry, cfg);
  REQUIRE(res.mpcs.size() == 3);

  const ChannelTensor rec = synth_channel(sc, res.mpcs, Wavefront::kPlanar);
  double err = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    err += std::norm(t.data()[i] - rec.data()[i]);
  CHECK(err < 0.01 * t.total_energy());
}

TEST_CASE("residual power is non-increasing over sweeps", "[sage]") {
  ScenarioConfig sc = ula_link(8, 8, 48);
  std::vector<Mpc> truth(2);
  truth[0].amplitude = {1.0, 0.0};
  truth[0].delay_s = 31e-9;
  truth[0].aaoa_rad = deg_to_rad(18.0);
  truth[0].aaod_rad = deg_to_rad(-11.0);
  truth[1].amplitude = std::polar(0.6, 0.7);
  truth[1].delay_s = 44e-9;
  truth[1].aaoa_rad = deg_to_rad(-25.0);
  truth[1].aaod_rad = deg_to_rad(33.0);
  ChannelTensor t = synth_channel(sc, truth, Wavefront::kPlanar);
  add_noise(t, 1e-4, 5);

  const SageResult res =
      sage_estimate(t, sc.tx_geometry, sc.rx_geometry, ula_sage(8, 8));
  REQUIRE(res.residual_history_db.size() >= 2);
  for (std::size_t i = 1; i < res.residual_history_db.size(); ++i)
    CHECK(res.residual_history_db[i] <=
          res.residual_history_db[i - 1] + 1e-9);
}

TEST_CASE("element relabeling leaves estimates unchanged", "[sage]") {
  ScenarioConfig sc = ula_link(8, 8, 48);
  std::vector<Mpc> truth(2);
  truth[0].amplitude = {1.0, 0.0};
  truth[0].delay_s = 25e-9;
  truth[0].aaoa_rad = deg_to_rad(20.0);
  truth[0].aaod_rad = deg_to_rad(-15.0);
  truth[1].amplitude = std::polar(0.4, 1.1);
  truth[1].delay_s = 75e-9;
  truth[1].aaoa_rad = deg_to_rad(-40.0);
  truth[1].aaod_rad = deg_to_rad(28.0);
  const ChannelTensor t = synth_channel(sc, truth, Wavefront::kPlanar);

  // reverse the receive element order consistently in data and geometry
  ChannelTensor t_rev(1, t.n_freq(), t.n_rx(), t.n_tx(), t.freq_axis_hz());
  for (std::size_t k = 0; k < t.n_freq(); ++k)
    for (std::size_t q = 0; q < t.n_rx(); ++q)
      for (std::size_t p = 0; p < t.n_tx(); ++p)
        t_rev.at(0, k, q, p) = t.at(0, k, t.n_rx() - 1 - q, p);
  ArrayGeometry rx_rev = sc.rx_geometry;
  std::reverse(rx_rev.elements.begin(), rx_rev.elements.end());

  const SageConfig cfg = ula_sage(8, 8);
  const SageResult a = sage_estimate(t, sc.tx_geometry, sc.rx_geometry, cfg);
  const SageResult b = sage_estimate(t_rev, sc.tx_geometry, rx_rev, cfg);
  REQUIRE(a.mpcs.size() == b.mpcs.size());
  for (std::size_t i = 0; i < a.mpcs.size(); ++i) {
    const Mpc *match = nearest_by_delay(b.mpcs, a.mpcs[i].delay_s);
    REQUIRE(match != nullptr);
    CHECK(std::abs(a.mpcs[i].delay_s - match->delay_s) < 1e-10);
    CHECK(angle_distance(a.mpcs[i].aaoa_rad, match->aaoa_rad) < 1e-4);
    CHECK(std::abs(std::abs(a.mpcs[i].amplitude) -
                   std::abs(match->amplitude)) < 1e-4);
  }
}

TEST_CASE("plane-wave window fit of a spherical wavefront", "[sage]") {
  // 8-element window: aperture 0.07 m, window Rayleigh distance ~0.49 m.
  // A source beyond that distance must fit with < 0.2 dB amplitude bias.
  ScenarioConfig sc;
  sc.tx_geometry = make_custom({{0.0, 0.0, 0.0}});
  sc.rx_geometry = make_ula(16, 0.01);
  sc.rx_geometry.origin = {1.0, 0.0, 0.0}; // past the window boundary
  sc.rx_geometry.bearing_rad = kPi;
  sc.n_freq = 32;

  const Mpc los = make_los_mpc(sc.tx_geometry, sc.rx_geometry, {1.0, 0.0});
  const ChannelTensor t = synth_channel(sc, {los}, Wavefront::kSpherical);

  SageConfig cfg = ula_sage(8, 1);
  cfg.max_paths = 1;
  const SageResult res = sage_estimate(t, sc.tx_geometry, sc.rx_geometry, cfg);
  REQUIRE(res.mpcs.size() == 1);
  CHECK(std::abs(res.mpcs.front().power_db() - los.power_db()) < 0.2);
}
