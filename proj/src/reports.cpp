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

#include "umic/reports.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "umic/reference.hpp"

namespace umic {

using nlohmann::json;

const SpreadRef &spread_ref(ScenarioClass c) {
  switch (c) {
  case ScenarioClass::kNfLos:
    return kSpreadNfLos;
  case ScenarioClass::kNfFoliage:
    return kSpreadNfFoliage;
  case ScenarioClass::kFfFoliage:
    return kSpreadFfFoliage;
  case ScenarioClass::kFfLos:
    return kSpreadFfLos;
  }
  return kSpreadNfLos;
}

namespace {

std::ofstream open_out(const std::string &path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f)
    throw FormatError("cannot open '" + path + "' for writing");
  return f;
}

std::string db2(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(2) << v;
  return ss.str();
}

void write_sidecar(const std::string &csv_path, const json &j) {
  const std::string side =
      csv_path.substr(0, csv_path.rfind('.')) + ".json";
  std::ofstream f = open_out(side);
  f << j.dump(2) << "\n";
}

json fit_to_json(const FitResult &f) {
  json j{{"model", to_string(f.model)},
         {"sigma_db", f.sigma_db},
         {"rmse_db", f.rmse_db},
         {"n_samples", f.n_samples}};
  switch (f.model) {
  case PathLossModel::kCi:
    j["ple"] = f.ple;
    j["d0_m"] = f.d0_m;
    break;
  case PathLossModel::kFi:
    j["alpha_db"] = f.alpha_fi;
    j["beta"] = f.beta_fi;
    break;
  default:
    j["a"] = f.a;
    j["b"] = f.b;
    j["c"] = f.c;
    break;
  }
  return j;
}

json distfit_to_json(const DistFit &f) {
  if (f.kind == DistFit::Kind::kNormal)
    return json{{"kind", "normal"},       {"mu", f.mu},
                {"sigma", f.sigma},       {"log_likelihood", f.log_likelihood},
                {"bic", f.bic},           {"converged", f.converged},
                {"degenerate", f.degenerate}};
  return json{{"kind", "gmm2"},
              {"w1", f.w1},
              {"mu1", f.mu1},
              {"sigma1", f.sigma1},
              {"w2", f.w2},
              {"mu2", f.mu2},
              {"sigma2", f.sigma2},
              {"mean", f.mean()},
              {"log_likelihood", f.log_likelihood},
              {"bic", f.bic},
              {"converged", f.converged},
              {"degenerate", f.degenerate}};
}

} // namespace

void write_pathloss_report(const std::string &csv_path,
                           const std::vector<PathLossRow> &rows) {
  std::ofstream f = open_out(csv_path);
  f << "scenario,model,PLE,alpha,beta,A,B,C,sigma_db,rmse_db,n_samples\n";
  json j = json::array();
  for (const PathLossRow &r : rows) {
    f << r.scenario << "," << to_string(r.fit.model) << ",";
    switch (r.fit.model) {
    case PathLossModel::kCi:
      f << db2(r.fit.ple) << ",,,,,,";
      break;
    case PathLossModel::kFi:
      f << "," << db2(r.fit.alpha_fi) << "," << db2(r.fit.beta_fi) << ",,,,";
      break;
    default:
      f << ",,," << db2(r.fit.a) << "," << db2(r.fit.b) << "," << db2(r.fit.c)
        << ",";
      break;
    }
    f << db2(r.fit.sigma_db) << "," << db2(r.fit.rmse_db) << ","
      << r.fit.n_samples << "\n";
    json row = fit_to_json(r.fit);
    row["scenario"] = r.scenario;
    j.push_back(row);
  }
  write_sidecar(csv_path, j);
}

void write_spread_report(const std::string &csv_path,
                         const std::vector<SpreadRow> &rows) {
  std::ofstream f = open_out(csv_path);
  f << "scenario,ds_mu_log10s,ds_sigma,asa_mu_log10deg,asa_sigma,"
       "asd_mu_log10deg,asd_sigma,esd_mu_log10deg,esd_sigma,n_links\n";
  json j = json::array();
  for (const SpreadRow &r : rows) {
    f << r.scenario << "," << db2(r.summary.ds.log10_mu) << ","
      << db2(r.summary.ds.log10_sigma) << "," << db2(r.summary.asa.log10_mu)
      << "," << db2(r.summary.asa.log10_sigma) << ","
      << db2(r.summary.asd.log10_mu) << "," << db2(r.summary.asd.log10_sigma)
      << "," << db2(r.summary.esd.log10_mu) << ","
      << db2(r.summary.esd.log10_sigma) << "," << r.summary.n_links << "\n";
    j.push_back(json{{"scenario", r.scenario},
                     {"ds_mu", r.summary.ds.log10_mu},
                     {"ds_sigma", r.summary.ds.log10_sigma},
                     {"asa_mu", r.summary.asa.log10_mu},
                     {"asa_sigma", r.summary.asa.log10_sigma},
                     {"asd_mu", r.summary.asd.log10_mu},
                     {"asd_sigma", r.summary.asd.log10_sigma},
                     {"esd_mu", r.summary.esd.log10_mu},
                     {"esd_sigma", r.summary.esd.log10_sigma},
                     {"n_links", r.summary.n_links}});
  }
  // standardized reference column for side-by-side reading
  const SpreadRef &g = kSpread3gppUmiLos;
  f << "3gpp_tr38901_umi_los," << db2(g.ds_mu) << "," << db2(g.ds_sigma) << ","
    << db2(g.asa_mu) << "," << db2(g.asa_sigma) << "," << db2(g.asd_mu) << ","
    << db2(g.asd_sigma) << "," << db2(g.esd_mu) << "," << db2(g.esd_sigma)
    << ",0\n";
  j.push_back(json{{"scenario", "3gpp_tr38901_umi_los"},
                   {"ds_mu", g.ds_mu},
                   {"ds_sigma", g.ds_sigma},
                   {"asa_mu", g.asa_mu},
                   {"asa_sigma", g.asa_sigma},
                   {"asd_mu", g.asd_mu},
                   {"asd_sigma", g.asd_sigma},
                   {"esd_mu", g.esd_mu},
                   {"esd_sigma", g.esd_sigma},
                   {"n_links", 0}});
  write_sidecar(csv_path, j);
}

void write_cscf_report(const std::string &csv_path,
                       const std::vector<CscfRow> &rows) {
  std::ofstream f = open_out(csv_path);
  f << "link_id,scenario,distance_m,cscf\n";
  json j = json::array();
  for (const CscfRow &r : rows) {
    f << r.link_id << "," << r.scenario << "," << db2(r.distance_m) << ","
      << std::setprecision(4) << std::fixed << r.cscf << "\n";
    j.push_back(json{{"link_id", r.link_id},
                     {"scenario", r.scenario},
                     {"distance_m", r.distance_m},
                     {"cscf", r.cscf}});
  }
  write_sidecar(csv_path, j);
}

void write_chd_report(const std::string &csv_path,
                      const std::vector<ChdRow> &rows) {
  std::ofstream f = open_out(csv_path);
  f << "scenario,n_rx,chd\n";
  json j = json::array();
  for (const ChdRow &r : rows) {
    f << r.scenario << "," << r.n_rx << "," << std::scientific
      << std::setprecision(6) << r.chd << "\n";
    j.push_back(json{{"scenario", r.scenario}, {"n_rx", r.n_rx}, {"chd", r.chd}});
  }
  write_sidecar(csv_path, j);
}

void write_capacity_report(const std::string &csv_path,
                           const std::vector<CapacityRow> &rows) {
  std::ofstream f = open_out(csv_path);
  f << "scenario,snr_db,mean_bps_hz,std_bps_hz,normal_mu,normal_sigma,"
       "gmm_w1,gmm_mu1,gmm_sigma1,gmm_w2,gmm_mu2,gmm_sigma2,selected\n";
  json j = json::array();
  for (const CapacityRow &r : rows) {
    f << r.scenario << "," << db2(r.snr_db) << "," << db2(r.mean_bps_hz) << ","
      << db2(r.std_bps_hz) << "," << db2(r.normal_fit.mu) << ","
      << db2(r.normal_fit.sigma) << "," << db2(r.gmm_fit.w1) << ","
      << db2(r.gmm_fit.mu1) << "," << db2(r.gmm_fit.sigma1) << ","
      << db2(r.gmm_fit.w2) << "," << db2(r.gmm_fit.mu2) << ","
      << db2(r.gmm_fit.sigma2) << "," << r.selected << "\n";
    j.push_back(json{{"scenario", r.scenario},
                     {"snr_db", r.snr_db},
                     {"mean", r.mean_bps_hz},
                     {"std", r.std_bps_hz},
                     {"normal", distfit_to_json(r.normal_fit)},
                     {"gmm2", distfit_to_json(r.gmm_fit)},
                     {"selected", r.selected}});
  }
  write_sidecar(csv_path, j);
}

void write_capacity_cdf(const std::string &csv_path,
                        const std::string &scenario,
                        const std::vector<std::pair<double, double>> &cdf) {
  std::ofstream f = open_out(csv_path);
  f << "scenario,capacity_bps_hz,probability\n";
  for (const auto &[v, p] : cdf)
    f << scenario << "," << std::setprecision(10) << v << ","
      << std::setprecision(8) << p << "\n";
}

void write_aperture_report(const std::string &csv_path,
                           const std::vector<ApertureRow> &rows) {
  std::ofstream f = open_out(csv_path);
  f << "link_id,scenario,distance_m,power_std_db,power_linfit_rmse_db,"
       "phase_linfit_rmse_rad,phase_quadfit_rmse_rad\n";
  json j = json::array();
  for (const ApertureRow &r : rows) {
    f << r.link_id << "," << r.scenario << "," << db2(r.distance_m) << ","
      << db2(r.power_std_db) << "," << db2(r.power_linfit_rmse_db) << ","
      << std::fixed << std::setprecision(4) << r.phase_linfit_rmse_rad << ","
      << r.phase_quadfit_rmse_rad << "\n";
    j.push_back(json{{"link_id", r.link_id},
                     {"scenario", r.scenario},
                     {"distance_m", r.distance_m},
                     {"power_std_db", r.power_std_db},
                     {"power_linfit_rmse_db", r.power_linfit_rmse_db},
                     {"phase_linfit_rmse_rad", r.phase_linfit_rmse_rad},
                     {"phase_quadfit_rmse_rad", r.phase_quadfit_rmse_rad}});
  }
  write_sidecar(csv_path, j);
}

void write_mpc_csv(const std::string &csv_path, const std::vector<Mpc> &mpcs) {
  std::ofstream f = open_out(csv_path);
  f << "index,amp_re,amp_im,power_db,delay_s,aaod_rad,eaod_rad,aaoa_rad,"
       "eaoa_rad\n";
  f << std::setprecision(17);
  for (std::size_t i = 0; i < mpcs.size(); ++i) {
    const Mpc &m = mpcs[i];
    f << i << "," << m.amplitude.real() << "," << m.amplitude.imag() << ","
      << m.power_db() << "," << m.delay_s << "," << m.aaod_rad << ","
      << m.eaod_rad << "," << m.aaoa_rad << "," << m.eaoa_rad << "\n";
  }
}

std::vector<Mpc> read_mpc_csv(const std::string &csv_path) {
  std::ifstream f(csv_path);
  if (!f)
    throw FormatError("cannot open '" + csv_path + "'");
  std::vector<Mpc> out;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    if (line.empty())
      continue;
    if (first) {
      first = false;
      continue; // header
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ss, cell, ','))
      vals.push_back(std::stod(cell));
    if (vals.size() != 9)
      throw FormatError("MPC row must have 9 columns");
    Mpc m;
    m.amplitude = {vals[1], vals[2]};
    m.delay_s = vals[4];
    m.aaod_rad = vals[5];
    m.eaod_rad = vals[6];
    m.aaoa_rad = vals[7];
    m.eaoa_rad = vals[8];
    m.validate();
    out.push_back(m);
  }
  return out;
}

} // namespace umic
