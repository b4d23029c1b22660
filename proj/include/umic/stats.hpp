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

#include <optional>
#include <span>
#include <vector>

#include "umic/mpc.hpp"
#include "umic/scenario.hpp"

namespace umic {

struct PathLossSample {
  double distance_m = 0.0; // 3D Tx-Rx
  double pl_db = 0.0;
  ScenarioClass scenario_class = ScenarioClass::kNfLos;
  double foliage_depth_m = 0.0;
};

struct FoliageSample {
  double depth_m = 0.0;
  double excess_loss_db = 0.0;
};

enum class PathLossModel { kCi, kFi, kCost235Out, kCost235In };

std::string to_string(PathLossModel m);

// Fitted model parameters. Only the fields matching `model` are set; sigma
// is the shadowing standard deviation of the dB-domain residuals.
struct FitResult {
  PathLossModel model = PathLossModel::kCi;
  double ple = 0.0;                      // CI
  double alpha_fi = 0.0, beta_fi = 0.0;  // FI
  double a = 0.0, b = 0.0, c = 0.0;      // vegetation model
  double sigma_db = 0.0;
  double rmse_db = 0.0;
  std::size_t n_samples = 0;
  double d0_m = 1.0;
  double freq_hz = 0.0;
};

// Omni-directional path loss from SAGE multipath gains referenced to the
// anechoic calibration: PL = -10 log10(sum |alpha_l|^2) + FSPL(d_ane).
double omni_path_loss(const std::vector<Mpc> &mpcs, double d_ane_m,
                      double carrier_hz);

// Close-in model: PL = FSPL(d0) + 10 PLE log10(d/d0) + X_sigma.
FitResult fit_ci(const std::vector<PathLossSample> &samples, double carrier_hz,
                 double d0_m = 1.0);

// Floating-intercept model: PL = alpha + 10 beta log10(d/d0) + X_sigma.
FitResult fit_fi(const std::vector<PathLossSample> &samples, double d0_m = 1.0);

// Vegetation excess-loss fit of L = A f^B d^C in the log domain. At a
// single frequency B is not identifiable and must be pinned via b_fixed.
FitResult fit_cost235(const std::vector<FoliageSample> &samples,
                      double freq_mhz, std::optional<double> b_fixed,
                      PathLossModel label = PathLossModel::kCost235Out);

// Joint A/B/C fit for samples spanning several frequencies.
struct FoliageSampleF {
  double depth_m = 0.0;
  double freq_mhz = 0.0;
  double excess_loss_db = 0.0;
};

FitResult fit_cost235_joint(const std::vector<FoliageSampleF> &samples,
                            PathLossModel label = PathLossModel::kCost235Out);

// Power-weighted RMS delay spread.
double rms_ds(const std::vector<Mpc> &mpcs);

struct AngularSpread {
  double rad = 0.0;
  double deg = 0.0;
  bool saturated = false; // circular resultant below the numerical floor
};

// Circular-resultant angular spread sqrt(-2 ln |sum P e^{j phi} / sum P|).
AngularSpread angular_spread(std::span<const double> angles_rad,
                             std::span<const double> powers);

struct LognormalFit {
  double log10_mu = 0.0;
  double log10_sigma = 0.0;
};

// Mean and (population) standard deviation of log10(values).
LognormalFit lognormal_fit(std::span<const double> values);

// Delay/arrival-azimuth power map. dB output clamped at floor_db.
struct PdapGrid {
  std::size_t n_delay = 0, n_angle = 0;
  double delay_min_s = 0.0, delay_max_s = 0.0;
  double angle_min_rad = 0.0, angle_max_rad = 0.0;
  std::vector<double> power_db; // [delay][angle]
  double total_linear_power = 0.0;

  double &cell(std::size_t d, std::size_t a) { return power_db[d * n_angle + a]; }
  double cell(std::size_t d, std::size_t a) const {
    return power_db[d * n_angle + a];
  }
};

PdapGrid pdap_grid(const std::vector<Mpc> &mpcs, std::size_t delay_bins,
                   std::size_t angle_bins, double floor_db = -250.0);

// Per-link delay/angle dispersion sample and its per-scenario lognormal
// summary, in the units used for reporting (seconds, degrees, log10).
struct SpreadStats {
  double rms_ds_s = 0.0;
  double asa_deg = 0.0;
  double asd_deg = 0.0;
  double esd_deg = 0.0;
};

SpreadStats spread_stats(const std::vector<Mpc> &mpcs);

struct SpreadSummary {
  LognormalFit ds;  // log10 seconds
  LognormalFit asa; // log10 degrees
  LognormalFit asd;
  LognormalFit esd;
  std::size_t n_links = 0;
};

SpreadSummary summarize_spreads(const std::vector<SpreadStats> &links);

} // namespace umic
