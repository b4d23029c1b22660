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

#include "umic/mpc.hpp"
#include "umic/propagation.hpp"
#include "umic/steering.hpp"
#include "umic/synth.hpp"

using namespace umic;

namespace {

// Independent degree-n polynomial fit residual (normal equations solved by
// hand), kept separate from the library's fitting code.
double poly_rmse(const std::vector<double> &x, const std::vector<double> &y,
                 int deg) {
  const int m = deg + 1;
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    double xp[3] = {1.0, x[i], x[i] * x[i]};
    for (int r = 0; r < m; ++r) {
      for (int c2 = 0; c2 < m; ++c2)
        a[r][c2] += xp[r] * xp[c2];
      a[r][m] += xp[r] * y[i];
    }
  }
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col]))
        piv = r;
    std::swap(a[piv], a[col]);
    for (int r = 0; r < m; ++r) {
      if (r == col)
        continue;
      const double f = a[r][col] / a[col][col];
      for (int c2 = col; c2 <= m; ++c2)
        a[r][c2] -= f * a[col][c2];
    }
  }
  double coef[3] = {0, 0, 0};
  for (int r = 0; r < m; ++r)
    coef[r] = a[r][m] / a[r][r];
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double fit = coef[0] + coef[1] * x[i] + coef[2] * x[i] * x[i];
    acc += (y[i] - fit) * (y[i] - fit);
  }
  return std::sqrt(acc / static_cast<double>(x.size()));
}

std::vector<double> unwrap(const std::vector<double> &ph) {
  std::vector<double> out = ph;
  for (std::size_t i = 1; i < out.size(); ++i)
    out[i] = out[i - 1] + wrap_angle(out[i] - out[i - 1]);
  return out;
}

ScenarioConfig basic_scenario(std::size_t n_rx_elems, std::size_t n_tx_elems,
                              std::size_t n_freq = 64) {
  ScenarioConfig sc;
  sc.tx_geometry = make_ula(n_tx_elems);
  sc.rx_geometry = make_ula(n_rx_elems);
  sc.rx_geometry.origin = {25.0, 0.0, 0.0};
  sc.rx_geometry.bearing_rad = kPi;
  sc.link_distance_m = 25.0;
  sc.n_freq = n_freq;
  return sc;
}

} // namespace

TEST_CASE("rayleigh distance", "[core]") {
  CHECK_THAT(rayleigh_distance(0.652, 15e9),
             Catch::Matchers::WithinAbs(42.5, 0.1));
  CHECK(rayleigh_distance(0.0, 15e9) == 0.0);
  CHECK_THAT(rayleigh_distance(0.1, 2.997e9),
             Catch::Matchers::WithinAbs(0.2, 1e-3));
  CHECK_THROWS_AS(rayleigh_distance(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rayleigh_distance(0.5, std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(rayleigh_distance(-1.0, 15e9), std::invalid_argument);
}

TEST_CASE("free-space path loss", "[core]") {
  CHECK_THAT(fspl_db(1.0, 15e9), Catch::Matchers::WithinAbs(55.96, 0.01));
  // distance and frequency doubling laws
  CHECK_THAT(fspl_db(50.0, 15e9) - fspl_db(25.0, 15e9),
             Catch::Matchers::WithinAbs(20.0 * std::log10(2.0), 1e-12));
  CHECK_THAT(fspl_db(1.0, 30e9) - fspl_db(1.0, 15e9),
             Catch::Matchers::WithinAbs(20.0 * std::log10(2.0), 1e-12));
  CHECK_THROWS_AS(fspl_db(0.0, 15e9), std::invalid_argument);

  // strictly increasing in both arguments
  double prev = 0.0;
  for (double d : {1.0, 2.0, 5.0, 17.0, 222.0}) {
    const double v = fspl_db(d, 15e9);
    CHECK(v > prev);
    prev = v;
  }
  prev = 0.0;
  for (double f : {1e9, 6e9, 15e9, 24e9}) {
    const double v = fspl_db(10.0, f);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("vegetation excess loss", "[core]") {
  CHECK_THAT(foliage_excess_loss_db(3.0, 15000.0, kCost235OutOfLeaf),
             Catch::Matchers::WithinAbs(6.73, 0.01));
  CHECK(foliage_excess_loss_db(0.0, 15000.0, kCost235OutOfLeaf) == 0.0);
  CHECK_THAT(foliage_excess_loss_db(3.0, 15000.0, kCost235InLeaf),
             Catch::Matchers::WithinAbs(19.04, 0.05));
  CHECK_THROWS_AS(
      foliage_excess_loss_db(0.0, 15000.0, VegetationLossParams{1.0, 0.0, -0.5}),
      std::domain_error);

  double prev = -1.0;
  for (double d = 0.0; d <= 12.0; d += 0.5) {
    const double v = foliage_excess_loss_db(d, 15000.0, kCost235OutOfLeaf);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("spherical steering single element", "[core]") {
  ArrayGeometry g = make_custom({{0.0, 0.0, 0.0}});
  const double d = 7.3, f = 15e9;
  const auto v = steering_spherical(g, {d, 0.0, 0.0}, f);
  REQUIRE(v.size() == 1);
  CHECK_THAT(std::abs(v[0]),
             Catch::Matchers::WithinRel(kSpeedOfLight / (4 * kPi * d * f), 1e-12));
  CHECK_THAT(std::arg(v[0]),
             Catch::Matchers::WithinAbs(wrap_angle(-kTwoPi * f * d / kSpeedOfLight),
                                        1e-9));
  CHECK_THROWS_AS(steering_spherical(g, {0.0, 0.0, 0.0}, f),
                  std::invalid_argument);
}

TEST_CASE("spherical steering symmetry and 1/d law", "[core]") {
  ArrayGeometry g = make_custom({{0.0, -0.05, 0.0}, {0.0, 0.05, 0.0}});
  const auto v = steering_spherical(g, {10.0, 0.0, 0.0}, 15e9);
  CHECK(std::abs(v[0] - v[1]) < 1e-15);

  ArrayGeometry ula = make_ula(16);
  const Vec3 src{4.0, 1.0, 0.3};
  const auto w = steering_spherical(ula, src, 15e9);
  for (std::size_t n = 0; n < ula.size(); ++n) {
    const double dn = (src - ula.element_global(n)).norm();
    CHECK_THAT(std::abs(w[n]) * dn,
               Catch::Matchers::WithinRel(
                   kSpeedOfLight / (4 * kPi * 15e9), 1e-12));
    // relative phase between elements
    for (std::size_t m2 = 0; m2 < n; ++m2) {
      const double dm = (src - ula.element_global(m2)).norm();
      const double expect = wrap_angle(-kTwoPi * 15e9 * (dn - dm) / kSpeedOfLight);
      CHECK_THAT(wrap_angle(std::arg(w[n]) - std::arg(w[m2])),
                 Catch::Matchers::WithinAbs(expect, 1e-9));
    }
  }
}

TEST_CASE("near-field phase curvature across a 0.63 m aperture", "[core]") {
  ArrayGeometry g;
  for (int i = 0; i < 64; ++i)
    g.elements.push_back({0.0, (i - 31.5) * 0.01, 0.0});
  const double f = 15e9;

  auto rmse_pair = [&](double dist) {
    const auto v = steering_spherical(g, {dist, 0.0, 0.0}, f);
    std::vector<double> idx(64), ph(64);
    for (int i = 0; i < 64; ++i) {
      idx[i] = i;
      ph[i] = std::arg(v[i]);
    }
    const auto u = unwrap(ph);
    return std::pair<double, double>{poly_rmse(idx, u, 1), poly_rmse(idx, u, 2)};
  };

  const auto [lin25, quad25] = rmse_pair(25.0);
  CHECK(quad25 < lin25 / 3.0);

  const auto [lin500, quad500] = rmse_pair(500.0);
  CHECK(lin500 < 0.05);
  CHECK(quad500 <= lin500);
}

TEST_CASE("planar steering basics", "[core]") {
  ArrayGeometry ula = make_ula(8, 0.01);
  const double f = 15e9;
  const double lambda = kSpeedOfLight / f;

  auto v = steering_planar(ula, 0.0, 0.0, f);
  for (const cxd &e : v)
    CHECK(std::abs(e - cxd{1.0, 0.0}) < 1e-12);

  // half-wavelength spacing, sin(az) = 1 -> adjacent phase step pi
  ArrayGeometry half = make_ula(8, lambda / 2.0);
  v = steering_planar(half, kPi / 2.0, 0.0, f);
  for (std::size_t n = 1; n < v.size(); ++n)
    CHECK_THAT(std::abs(wrap_angle(std::arg(v[n]) - std::arg(v[n - 1]))),
               Catch::Matchers::WithinAbs(kPi, 1e-9));
  for (const cxd &e : v)
    CHECK_THAT(std::abs(e), Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("planar steering is the far-field limit of spherical", "[core]") {
  ArrayGeometry g = make_ula(16, 0.01); // aperture 0.15 m
  const double f = 15e9;
  const double az = 0.35, el = -0.1;

  SECTION("source at 1e4 x aperture") {
    const double dist = 1e4 * 0.15;
    const Vec3 src = direction_from_angles(az, el) * dist;
    const auto sph = steering_spherical(g, src, f);
    const auto pla = steering_planar(g, az, el, f);
    // remove the common bulk phase via element 0
    for (std::size_t n = 0; n < g.size(); ++n) {
      const double dev = wrap_angle((std::arg(sph[n]) - std::arg(sph[0])) -
                                    (std::arg(pla[n]) - std::arg(pla[0])));
      CHECK(std::abs(dev) < 1e-3);
    }
  }

  SECTION("deviation bound at 100 x rayleigh distance") {
    const double rd = rayleigh_distance(g.aperture_m(), f);
    const Vec3 src = direction_from_angles(az, el) * (100.0 * rd);
    const auto sph = steering_spherical(g, src, f);
    const auto pla = steering_planar(g, az, el, f);
    for (std::size_t n = 0; n < g.size(); ++n) {
      const double dev = wrap_angle((std::arg(sph[n]) - std::arg(sph[0])) -
                                    (std::arg(pla[n]) - std::arg(pla[0])));
      CHECK(std::abs(dev) < 0.05);
    }
  }
}

TEST_CASE("planar synthesis: broadside single path", "[core]") {
  ScenarioConfig sc = basic_scenario(4, 4);
  Mpc m;
  m.amplitude = {1.0, 0.0};
  m.delay_s = 80e-9;
  const ChannelTensor t = synth_channel(sc, {m}, Wavefront::kPlanar);
  for (std::size_t k = 0; k < t.n_freq(); ++k) {
    const cxd expect = std::polar(1.0, -kTwoPi * t.freq_axis_hz()[k] * m.delay_s);
    for (std::size_t q = 0; q < t.n_rx(); ++q)
      for (std::size_t p = 0; p < t.n_tx(); ++p)
        CHECK(std::abs(t.at(0, k, q, p) - expect) < 1e-12);
  }
}

TEST_CASE("planar synthesis: delay phase slope and two-path period", "[core]") {
  // 250 bins over 250 MHz: the 10 MHz two-path period is exactly 10 bins
  ScenarioConfig sc = basic_scenario(1, 1, 250);
  Mpc m;
  m.amplitude = {1.0, 0.0};
  m.delay_s = 100e-9;
  const ChannelTensor t = synth_channel(sc, {m}, Wavefront::kPlanar);
  const double df = t.freq_spacing_hz();
  for (std::size_t k = 1; k < t.n_freq(); ++k) {
    const double slope =
        wrap_angle(std::arg(t.at(0, k, 0, 0)) - std::arg(t.at(0, k - 1, 0, 0))) /
        df;
    CHECK_THAT(slope, Catch::Matchers::WithinRel(-kTwoPi * 1e-7, 1e-6));
  }

  // equal-power paths at 0 and 100 ns: |H|^2 periodic with 10 MHz
  Mpc m0 = m;
  m0.delay_s = 0.0;
  const ChannelTensor t2 = synth_channel(sc, {m0, m}, Wavefront::kPlanar);
  const std::size_t period_bins =
      static_cast<std::size_t>(std::round(10e6 / df));
  REQUIRE(period_bins > 0);
  for (std::size_t k = 0; k + period_bins < t2.n_freq(); ++k)
    CHECK_THAT(std::norm(t2.at(0, k, 0, 0)),
               Catch::Matchers::WithinAbs(
                   std::norm(t2.at(0, k + period_bins, 0, 0)), 1e-9));
}

TEST_CASE("synthesis is linear in the MPC list", "[core]") {
  ScenarioConfig sc = basic_scenario(3, 5);
  Mpc a, b;
  a.amplitude = {0.8, -0.4};
  a.delay_s = 30e-9;
  a.aaoa_rad = 0.4;
  a.aaod_rad = -0.2;
  b.amplitude = {-0.1, 0.9};
  b.delay_s = 95e-9;
  b.aaoa_rad = -1.2;
  b.aaod_rad = 0.7;
  b.eaoa_rad = 0.2;
  const ChannelTensor ta = synth_channel(sc, {a}, Wavefront::kPlanar);
  const ChannelTensor tb = synth_channel(sc, {b}, Wavefront::kPlanar);
  const ChannelTensor tab = synth_channel(sc, {a, b}, Wavefront::kPlanar);
  for (std::size_t i = 0; i < tab.size(); ++i)
    CHECK(std::abs(tab.data()[i] - (ta.data()[i] + tb.data()[i])) < 1e-12);
}

TEST_CASE("synthesis rejects out-of-window delays", "[core]") {
  ScenarioConfig sc = basic_scenario(2, 2);
  sc.delay_window_s = 200e-9;
  Mpc m;
  m.amplitude = {1.0, 0.0};
  m.delay_s = 300e-9;
  CHECK_THROWS_AS(synth_channel(sc, {m}, Wavefront::kPlanar),
                  std::out_of_range);
}

TEST_CASE("spherical synthesis accepts consistent geometry only", "[core]") {
  ScenarioConfig sc = basic_scenario(4, 4);

  SECTION("direct path from the construction helper") {
    const Mpc los = make_los_mpc(sc.tx_geometry, sc.rx_geometry, {1.0, 0.0});
    const ChannelTensor t = synth_channel(sc, {los}, Wavefront::kSpherical);
    // origin-to-origin entry reproduces alpha * exp(-j 2 pi f tau) rescaled
    // by the pairwise distance; total energy is finite and nonzero
    CHECK(t.total_energy() > 0.0);
  }

  SECTION("single bounce from the construction helper") {
    const Vec3 bounce{12.0, 6.0, 1.0};
    const Mpc m =
        make_single_bounce_mpc(sc.tx_geometry, sc.rx_geometry, bounce, {0.5, 0.5});
    const ChannelTensor t = synth_channel(sc, {m}, Wavefront::kSpherical);
    CHECK(t.total_energy() > 0.0);
  }

  SECTION("inconsistent departure angle is rejected") {
    Mpc m = make_single_bounce_mpc(sc.tx_geometry, sc.rx_geometry,
                                   {12.0, 6.0, 1.0}, {1.0, 0.0});
    m.aaod_rad += 0.2;
    CHECK_THROWS_AS(synth_channel(sc, {m}, Wavefront::kSpherical),
                    std::invalid_argument);
  }

  SECTION("delay shorter than the direct path is rejected") {
    Mpc m = make_los_mpc(sc.tx_geometry, sc.rx_geometry, {1.0, 0.0});
    m.delay_s *= 0.5;
    CHECK_THROWS_AS(synth_channel(sc, {m}, Wavefront::kSpherical),
                    std::invalid_argument);
  }
}

TEST_CASE("spherical LoS matches spherical steering structure", "[core]") {
  // One transmit element at the origin: H[q] must follow the exact
  // element-to-source amplitudes and phases.
  ScenarioConfig sc;
  sc.tx_geometry = make_custom({{0.0, 0.0, 0.0}});
  sc.rx_geometry = make_ula(16, 0.01);
  sc.rx_geometry.origin = {25.0, 0.0, 0.0};
  sc.n_freq = 8;
  const Mpc los = make_los_mpc(sc.tx_geometry, sc.rx_geometry, {1.0, 0.0});
  const ChannelTensor t = synth_channel(sc, {los}, Wavefront::kSpherical);

  const double d_ref = 25.0;
  for (std::size_t k = 0; k < t.n_freq(); ++k) {
    const double f = t.freq_axis_hz()[k];
    for (std::size_t q = 0; q < t.n_rx(); ++q) {
      const double dq = (sc.rx_geometry.element_global(q) -
                         sc.tx_geometry.element_global(0))
                            .norm();
      const cxd expect = std::polar(d_ref / dq, -kTwoPi * f * dq / kSpeedOfLight);
      CHECK(std::abs(t.at(0, k, q, 0) - expect) < 1e-9);
    }
  }
}

TEST_CASE("element pattern halves power at 60 degrees", "[core]") {
  ArrayGeometry g = make_ula(4);
  g.pattern = ElementPattern::kCosine120;
  const double g0 = g.pattern_gain({1.0, 0.0, 0.0});
  const double g60 = g.pattern_gain(direction_from_angles(kPi / 3.0, 0.0));
  CHECK_THAT(g0, Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(g60 * g60, Catch::Matchers::WithinAbs(0.5, 1e-12));
  CHECK(g.pattern_gain({-1.0, 0.1, 0.0}) == 0.0);
}

TEST_CASE("iid rayleigh reference channel", "[core]") {
  const ChannelTensor t = iid_rayleigh(64, 128, 1, 128, 42);
  REQUIRE(t.size() >= 1000000);
  double acc = 0.0;
  for (const cxd &v : t.data())
    acc += std::norm(v);
  CHECK_THAT(acc / static_cast<double>(t.size()),
             Catch::Matchers::WithinAbs(1.0, 0.01));

  const ChannelTensor t2 = iid_rayleigh(64, 128, 1, 128, 42);
  CHECK(std::equal(t.data().begin(), t.data().end(), t2.data().begin()));

  const ChannelTensor t3 = iid_rayleigh(4, 4, 1, 4, 43);
  const ChannelTensor t4 = iid_rayleigh(4, 4, 1, 4, 44);
  CHECK(!std::equal(t3.data().begin(), t3.data().end(), t4.data().begin()));
}

TEST_CASE("array constructors enforce their invariants", "[core]") {
  const ArrayGeometry l = make_l_shaped_ula(128);
  CHECK(l.size() == 128);
  l.validate();
  // horizontal leg spans 63.2 cm
  CHECK_THAT((l.elements[63] - l.elements[0]).norm(),
             Catch::Matchers::WithinAbs(0.632, 1e-9));

  const ArrayGeometry quad = make_quad_panel(64);
  CHECK(quad.size() == 64);
  quad.validate();

  CHECK_THROWS_AS(make_l_shaped_ula(7), std::invalid_argument);
  CHECK_THROWS_AS(make_custom({}), std::invalid_argument);
  CHECK_THROWS_AS(make_custom({{0.0, std::nan(""), 0.0}}),
                  std::invalid_argument);
}
