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

#include "umic/synth.hpp"

#include <stdexcept>

#include "umic/rng.hpp"
#include "umic/steering.hpp"

namespace umic {

namespace {

constexpr double kDelayTol = 1e-11;  // 0.01 ns
constexpr double kAngleTol = 1e-6;   // rad

struct PathGeometry {
  bool is_los = false;
  Vec3 bounce{}; // global, valid when !is_los
  double r_out = 0.0, r_in = 0.0;
};

// Places the MPC in 3D. The direct path must match the origin-to-origin
// delay and angles; anything else is solved as a single bounce on the
// (delay, arrival-direction) ellipsoid, and the stated departure direction
// has to agree with the resulting point.
PathGeometry resolve_path(const ScenarioConfig &sc, const Mpc &m) {
  const Vec3 v = sc.tx_geometry.origin - sc.rx_geometry.origin; // rx -> tx
  const double d_los = v.norm();
  const double c_tau = m.delay_s * kSpeedOfLight;

  const Mpc los = make_los_mpc(sc.tx_geometry, sc.rx_geometry, m.amplitude);
  const bool delay_is_los = std::abs(m.delay_s - los.delay_s) <
                            std::max(kDelayTol, 1e-9 * los.delay_s);
  if (delay_is_los) {
    if (angle_distance(m.aaod_rad, los.aaod_rad) < kAngleTol &&
        angle_distance(m.aaoa_rad, los.aaoa_rad) < kAngleTol &&
        std::abs(m.eaod_rad - los.eaod_rad) < kAngleTol &&
        std::abs(m.eaoa_rad - los.eaoa_rad) < kAngleTol) {
      PathGeometry g;
      g.is_los = true;
      return g;
    }
    throw std::invalid_argument(
        "MPC delay equals the direct-path delay but angles do not");
  }
  if (c_tau <= d_los)
    throw std::invalid_argument(
        "MPC delay is shorter than the direct path; no bounce point exists");

  const Vec3 u_arr = sc.rx_geometry.local_to_global_dir(
      direction_from_angles(m.aaoa_rad, m.eaoa_rad));
  const double vu = v.dot(u_arr);
  const double denom = 2.0 * (c_tau - vu);
  if (denom <= 0.0)
    throw std::invalid_argument("arrival ray does not meet the delay ellipsoid");
  const double r_in = (c_tau * c_tau - d_los * d_los) / denom;
  const double r_out = c_tau - r_in;
  if (r_in <= 0.0 || r_out <= 0.0)
    throw std::invalid_argument("bounce point falls behind an array");

  PathGeometry g;
  g.bounce = sc.rx_geometry.origin + u_arr * r_in;
  g.r_in = r_in;
  g.r_out = r_out;

  const AzEl dep = angles_from_direction(
      sc.tx_geometry.global_to_local_dir(g.bounce - sc.tx_geometry.origin));
  if (angle_distance(m.aaod_rad, dep.azimuth_rad) > kAngleTol ||
      std::abs(m.eaod_rad - dep.elevation_rad) > kAngleTol)
    throw std::invalid_argument(
        "departure angles inconsistent with (delay, arrival angles)");
  return g;
}

void add_planar_path(ChannelTensor &t, const ScenarioConfig &sc,
                     const Mpc &m) {
  const double g_tx = sc.tx_geometry.pattern_gain(
      direction_from_angles(m.aaod_rad, m.eaod_rad));
  const double g_rx = sc.rx_geometry.pattern_gain(
      direction_from_angles(m.aaoa_rad, m.eaoa_rad));
  const cxd amp = m.amplitude * g_tx * g_rx;
  if (amp == cxd{0.0, 0.0})
    return;
  for (std::size_t k = 0; k < t.n_freq(); ++k) {
    const double f = t.freq_axis_hz()[k];
    const auto a_tx = steering_planar(sc.tx_geometry, m.aaod_rad, m.eaod_rad, f);
    const auto a_rx = steering_planar(sc.rx_geometry, m.aaoa_rad, m.eaoa_rad, f);
    const cxd ph = std::polar(1.0, -kTwoPi * f * m.delay_s) * amp;
    for (std::size_t q = 0; q < t.n_rx(); ++q) {
      const cxd rq = a_rx[q] * ph;
      for (std::size_t p = 0; p < t.n_tx(); ++p)
        t.at(0, k, q, p) += rq * a_tx[p];
    }
  }
}

void add_spherical_path(ChannelTensor &t, const ScenarioConfig &sc,
                        const Mpc &m, const PathGeometry &pg) {
  const ArrayGeometry &tx = sc.tx_geometry;
  const ArrayGeometry &rx = sc.rx_geometry;
  const double wavenum_scale = kTwoPi / kSpeedOfLight;

  if (pg.is_los) {
    const double d_ref = (rx.origin - tx.origin).norm();
    const double g_tx = tx.pattern_gain(tx.global_to_local_dir(rx.origin - tx.origin));
    const double g_rx = rx.pattern_gain(rx.global_to_local_dir(tx.origin - rx.origin));
    const cxd amp = m.amplitude * g_tx * g_rx;
    if (amp == cxd{0.0, 0.0})
      return;
    // Exact pairwise distances carry the near-field amplitude and phase
    // structure; the origin-to-origin pair reproduces amp*exp(-j2pi f tau).
    std::vector<double> d_qp(t.n_rx() * t.n_tx());
    for (std::size_t q = 0; q < t.n_rx(); ++q) {
      const Vec3 xq = rx.element_global(q);
      for (std::size_t p = 0; p < t.n_tx(); ++p)
        d_qp[q * t.n_tx() + p] = (xq - tx.element_global(p)).norm();
    }
    for (std::size_t k = 0; k < t.n_freq(); ++k) {
      const double kf = wavenum_scale * t.freq_axis_hz()[k];
      for (std::size_t q = 0; q < t.n_rx(); ++q)
        for (std::size_t p = 0; p < t.n_tx(); ++p) {
          const double d = d_qp[q * t.n_tx() + p];
          t.at(0, k, q, p) += amp * std::polar(d_ref / d, -kf * d);
        }
    }
    return;
  }

  const double g_tx =
      tx.pattern_gain(tx.global_to_local_dir(pg.bounce - tx.origin));
  const double g_rx =
      rx.pattern_gain(rx.global_to_local_dir(pg.bounce - rx.origin));
  const cxd amp = m.amplitude * g_tx * g_rx;
  if (amp == cxd{0.0, 0.0})
    return;
  std::vector<double> r_p(t.n_tx()), r_q(t.n_rx());
  for (std::size_t p = 0; p < t.n_tx(); ++p)
    r_p[p] = (pg.bounce - tx.element_global(p)).norm();
  for (std::size_t q = 0; q < t.n_rx(); ++q)
    r_q[q] = (pg.bounce - rx.element_global(q)).norm();

  std::vector<cxd> w_tx(t.n_tx()), w_rx(t.n_rx());
  for (std::size_t k = 0; k < t.n_freq(); ++k) {
    const double kf = wavenum_scale * t.freq_axis_hz()[k];
    for (std::size_t p = 0; p < t.n_tx(); ++p)
      w_tx[p] = std::polar(pg.r_out / r_p[p], -kf * r_p[p]);
    for (std::size_t q = 0; q < t.n_rx(); ++q)
      w_rx[q] = std::polar(pg.r_in / r_q[q], -kf * r_q[q]);
    for (std::size_t q = 0; q < t.n_rx(); ++q) {
      const cxd rq = amp * w_rx[q];
      for (std::size_t p = 0; p < t.n_tx(); ++p)
        t.at(0, k, q, p) += rq * w_tx[p];
    }
  }
}

} // namespace

ChannelTensor synth_channel(const ScenarioConfig &scenario,
                            const std::vector<Mpc> &mpcs,
                            Wavefront wavefront) {
  scenario.validate();
  if (mpcs.empty())
    throw std::invalid_argument("at least one MPC is required");
  for (const Mpc &m : mpcs) {
    m.validate();
    if (m.delay_s > scenario.delay_window_s)
      throw std::out_of_range("MPC delay exceeds the configured delay window");
  }

  ChannelTensor t(scenario.n_snapshots, scenario.n_freq,
                  scenario.rx_geometry.size(), scenario.tx_geometry.size(),
                  make_freq_axis(scenario.carrier_hz, scenario.bandwidth_hz,
                                 scenario.n_freq));

  for (const Mpc &m : mpcs) {
    if (wavefront == Wavefront::kPlanar) {
      add_planar_path(t, scenario, m);
    } else {
      add_spherical_path(t, scenario, m, resolve_path(scenario, m));
    }
  }

  // Static channel: snapshots beyond the first replicate snapshot 0.
  for (std::size_t j = 1; j < t.n_snapshots(); ++j)
    for (std::size_t k = 0; k < t.n_freq(); ++k)
      for (std::size_t q = 0; q < t.n_rx(); ++q)
        for (std::size_t p = 0; p < t.n_tx(); ++p)
          t.at(j, k, q, p) = t.at(0, k, q, p);
  return t;
}

ChannelTensor iid_rayleigh(std::size_t n_rx, std::size_t n_tx,
                           std::size_t n_snapshots, std::size_t n_freq,
                           std::uint64_t seed) {
  std::vector<double> axis(n_freq);
  for (std::size_t k = 0; k < n_freq; ++k)
    axis[k] = static_cast<double>(k);
  ChannelTensor t(n_snapshots, n_freq, n_rx, n_tx, std::move(axis));
  Rng rng(seed);
  for (cxd &v : t.data())
    v = rng.cnormal();
  return t;
}

} // namespace umic
