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
#include <vector>

#include "umic/capacity.hpp"
#include "umic/mpc.hpp"
#include "umic/stats.hpp"

namespace umic {

// CSV emitters, each with a JSON sidecar ('<name>.json' next to the CSV)
// carrying the same values at full precision. dB figures in the CSV are
// printed at two decimals.

struct PathLossRow {
  std::string scenario;
  FitResult fit;
};

void write_pathloss_report(const std::string &csv_path,
                           const std::vector<PathLossRow> &rows);

struct SpreadRow {
  std::string scenario;
  SpreadSummary summary;
};

// Includes the standardized UMi LoS reference column alongside the
// per-scenario summaries.
void write_spread_report(const std::string &csv_path,
                         const std::vector<SpreadRow> &rows);

struct CscfRow {
  std::string link_id;
  std::string scenario;
  double distance_m = 0.0;
  double cscf = 0.0;
};

void write_cscf_report(const std::string &csv_path,
                       const std::vector<CscfRow> &rows);

struct ChdRow {
  std::string scenario;
  std::size_t n_rx = 0;
  double chd = 0.0;
};

void write_chd_report(const std::string &csv_path,
                      const std::vector<ChdRow> &rows);

struct CapacityRow {
  std::string scenario;
  double snr_db = 0.0;
  double mean_bps_hz = 0.0;
  double std_bps_hz = 0.0;
  DistFit normal_fit;
  DistFit gmm_fit;
  std::string selected; // lower BIC
};

void write_capacity_report(const std::string &csv_path,
                           const std::vector<CapacityRow> &rows);

void write_capacity_cdf(const std::string &csv_path, const std::string &scenario,
                        const std::vector<std::pair<double, double>> &cdf);

struct ApertureRow {
  std::string link_id;
  std::string scenario;
  double distance_m = 0.0;
  double power_std_db = 0.0;
  double power_linfit_rmse_db = 0.0;
  double phase_linfit_rmse_rad = 0.0;
  double phase_quadfit_rmse_rad = 0.0;
};

void write_aperture_report(const std::string &csv_path,
                           const std::vector<ApertureRow> &rows);

// MPC record format shared by the CLI and the suite.
void write_mpc_csv(const std::string &csv_path, const std::vector<Mpc> &mpcs);
std::vector<Mpc> read_mpc_csv(const std::string &csv_path);

} // namespace umic
