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

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "umic/capacity.hpp"
#include "umic/config.hpp"
#include "umic/manifest.hpp"
#include "umic/newchar.hpp"
#include "umic/reports.hpp"
#include "umic/sage.hpp"
#include "umic/sounding.hpp"
#include "umic/suite.hpp"
#include "umic/synth.hpp"
#include "umic/tensor_io.hpp"

namespace {

using namespace umic;

// Waveform and CIR sets ride in the tensor blob container with the sample
// (or delay-bin) index on the frequency axis.
ChannelTensor pack_waveforms(const Waveforms &w) {
  std::vector<double> axis(w.n_samples);
  for (std::size_t i = 0; i < w.n_samples; ++i)
    axis[i] = static_cast<double>(i);
  ChannelTensor t(1, w.n_samples, w.n_rx, w.n_tx, std::move(axis));
  for (std::size_t q = 0; q < w.n_rx; ++q)
    for (std::size_t p = 0; p < w.n_tx; ++p) {
      auto src = w.pair(q, p);
      for (std::size_t i = 0; i < w.n_samples; ++i)
        t.at(0, i, q, p) = src[i];
    }
  return t;
}

Cir pack_cir(const ChannelTensor &t, double bandwidth_hz) {
  Cir c = Cir::zeros(t.n_rx(), t.n_tx(), t.n_freq(), 1.0 / bandwidth_hz);
  for (std::size_t q = 0; q < t.n_rx(); ++q)
    for (std::size_t p = 0; p < t.n_tx(); ++p)
      for (std::size_t k = 0; k < t.n_freq(); ++k)
        c.tap(q, p, k) = t.at(0, k, q, p);
  return c;
}

ChannelTensor cir_container(const Cir &c) {
  std::vector<double> axis(c.n_bins);
  for (std::size_t i = 0; i < c.n_bins; ++i)
    axis[i] = static_cast<double>(i);
  ChannelTensor t(1, c.n_bins, c.n_rx, c.n_tx, std::move(axis));
  for (std::size_t q = 0; q < c.n_rx; ++q)
    for (std::size_t p = 0; p < c.n_tx; ++p)
      for (std::size_t k = 0; k < c.n_bins; ++k)
        t.at(0, k, q, p) = c.tap(q, p, k);
  return t;
}

GeometryRef geometry_flags(CLI::App *cmd, const std::string &prefix,
                           GeometryRef &ref) {
  cmd->add_option("--" + prefix + "-kind", ref.kind,
                  "ula | l_shaped_ula | planar | quad_panel");
  cmd->add_option("--" + prefix + "-n", ref.n, "element count");
  cmd->add_option("--" + prefix + "-rows", ref.rows, "planar rows");
  cmd->add_option("--" + prefix + "-cols", ref.cols, "planar cols");
  cmd->add_option("--" + prefix + "-spacing", ref.spacing_m,
                  "element spacing [m]");
  return ref;
}

std::vector<PathLossSample> read_pl_csv(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw FormatError("cannot open '" + path + "'");
  std::vector<PathLossSample> out;
  std::string line;
  bool header = true;
  while (std::getline(f, line)) {
    if (line.empty())
      continue;
    if (header) {
      header = false;
      continue;
    }
    std::stringstream ss(line);
    std::string a, b;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    out.push_back({std::stod(a), std::stod(b), ScenarioClass::kNfLos, 0.0});
  }
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"umic - UM-MIMO channel synthesis, sounding emulation and "
               "characterization"};
  app.require_subcommand(1);

  std::string out_dir = "out";
  std::uint64_t seed = 1;
  std::string config_path;
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "master seed")->capture_default_str();
  app.add_option("--config", config_path, "key=value config file");

  double carrier_hz = 15e9, bandwidth_hz = 250e6;

  // ---- synth ----
  auto *synth_cmd = app.add_subcommand("synth", "generate a synthetic link");
  std::string synth_class = "nf_los";
  synth_cmd->add_option("--scenario-class", synth_class,
                        "nf_los | nf_foliage | ff_foliage | ff_los");

  // ---- sound ----
  auto *sound_cmd =
      app.add_subcommand("sound", "emulate PN sounding of a channel tensor");
  std::string sound_tensor;
  double sound_noise = -130.0;
  unsigned sound_pn_width = 10, sound_os = 4;
  sound_cmd->add_option("--tensor", sound_tensor, "channel tensor blob")
      ->required();
  sound_cmd->add_option("--carrier-hz", carrier_hz, "carrier frequency");
  sound_cmd->add_option("--bandwidth-hz", bandwidth_hz, "bandwidth");
  sound_cmd->add_option("--noise-floor-dbm", sound_noise, "noise floor");
  sound_cmd->add_option("--pn-width", sound_pn_width, "PN register width");
  sound_cmd->add_option("--oversample", sound_os, "samples per chip");

  // ---- calibrate ----
  auto *cal_cmd = app.add_subcommand(
      "calibrate", "OTA calibration of sounding captures");
  std::string cal_meas, cal_ref;
  double cal_d_ane = 2.398339664;
  bool cal_relative = false;
  unsigned cal_os = 4;
  cal_cmd->add_option("--meas", cal_meas, "measured waveforms blob")
      ->required();
  cal_cmd->add_option("--cal", cal_ref, "anechoic reference waveform blob")
      ->required();
  cal_cmd->add_option("--d-ane-m", cal_d_ane, "anechoic distance [m]");
  cal_cmd->add_option("--carrier-hz", carrier_hz, "carrier frequency");
  cal_cmd->add_option("--bandwidth-hz", bandwidth_hz, "bandwidth");
  cal_cmd->add_option("--oversample", cal_os, "samples per chip");
  cal_cmd->add_flag("--relative", cal_relative,
                    "anechoic-relative gains (path-loss convention)");

  // ---- sage ----
  auto *sage_cmd =
      app.add_subcommand("sage", "multipath extraction from a tensor");
  std::string sage_tensor;
  GeometryRef sage_tx{"l_shaped_ula", 128, 0, 0};
  GeometryRef sage_rx{"quad_panel", 64, 0, 0};
  SageConfig sage_cfg;
  sage_cmd->add_option("--tensor", sage_tensor, "channel tensor blob")
      ->required();
  sage_cmd->add_option("--carrier-hz", carrier_hz, "carrier frequency");
  sage_cmd->add_option("--bandwidth-hz", bandwidth_hz, "bandwidth");
  geometry_flags(sage_cmd, "tx", sage_tx);
  geometry_flags(sage_cmd, "rx", sage_rx);
  sage_cmd->add_option("--window-rx", sage_cfg.window_rx, "SAGE rx window");
  sage_cmd->add_option("--window-tx", sage_cfg.window_tx, "SAGE tx window");
  sage_cmd->add_option("--max-paths", sage_cfg.max_paths, "path budget");
  sage_cmd->add_option("--dynamic-range-db", sage_cfg.dynamic_range_db,
                       "pruning dynamic range");

  // ---- pathloss-fit ----
  auto *plfit_cmd =
      app.add_subcommand("pathloss-fit", "CI/FI fit of (distance, PL) data");
  std::string plfit_csv, plfit_model = "ci";
  plfit_cmd->add_option("--samples", plfit_csv,
                        "CSV with distance_m,pl_db rows")
      ->required();
  plfit_cmd->add_option("--model", plfit_model, "ci | fi");
  plfit_cmd->add_option("--carrier-hz", carrier_hz, "carrier frequency");

  // ---- stats ----
  auto *stats_cmd =
      app.add_subcommand("stats", "delay/angle spreads of an MPC list");
  std::string stats_mpcs;
  stats_cmd->add_option("--mpcs", stats_mpcs, "MPC CSV file")->required();

  // ---- sns ----
  auto *sns_cmd = app.add_subcommand("sns", "CSCCF of a channel tensor");
  std::string sns_tensor;
  sns_cmd->add_option("--tensor", sns_tensor, "channel tensor blob")
      ->required();

  // ---- chd ----
  auto *chd_cmd =
      app.add_subcommand("chd", "channel hardening across manifest links");
  std::string chd_manifest;
  chd_cmd->add_option("--manifest", chd_manifest, "dataset manifest")
      ->required();

  // ---- capacity ----
  auto *cap_cmd = app.add_subcommand("capacity", "capacity of a tensor");
  std::string cap_tensor;
  double cap_snr = 10.0;
  cap_cmd->add_option("--tensor", cap_tensor, "channel tensor blob")
      ->required();
  cap_cmd->add_option("--snr-db", cap_snr, "SNR rho in dB");
  cap_cmd->add_option("--carrier-hz", carrier_hz, "carrier frequency");
  cap_cmd->add_option("--bandwidth-hz", bandwidth_hz, "bandwidth");

  // ---- suite ----
  auto *suite_cmd =
      app.add_subcommand("suite", "full synthetic scenario batch");

  // ---- import ----
  auto *import_cmd =
      app.add_subcommand("import", "build a manifest from external blobs");
  std::string import_meta, import_base = ".";
  import_cmd->add_option("--metadata", import_meta, "metadata CSV")
      ->required();
  import_cmd->add_option("--base-dir", import_base, "blob base directory");

  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out_dir);

    if (*synth_cmd) {
      RunConfig rc;
      if (!config_path.empty())
        rc = RunConfig::from_config(KeyValueConfig::from_file(config_path));
      rc.seed = seed;
      const ScenarioClass cls = scenario_class_from_string(synth_class);
      const GeneratedLink link = generate_link(cls, rc, seed);
      const ChannelTensor t =
          synth_channel(link.scenario, link.mpcs, Wavefront::kPlanar);
      save_tensor(out_dir + "/synth.umct", t);
      write_mpc_csv(out_dir + "/synth_mpcs.csv", link.mpcs);
      std::cout << "wrote " << out_dir << "/synth.umct ("
                << link.mpcs.size() << " paths, "
                << link.scenario.link_distance_m << " m)\n";
    } else if (*sound_cmd) {
      const ChannelTensor t =
          load_tensor(sound_tensor, carrier_hz, bandwidth_hz);
      const PnSequence pn = gen_pn(sound_pn_width);
      if (t.n_freq() != pn.length())
        throw ConfigError("tensor frequency bins must equal the PN length");
      const SounderResponse resp;
      const Waveforms w = sound_link(cir_from_tensor(t), pn, resp, sound_noise,
                                     sound_os, seed, 1);
      save_tensor(out_dir + "/waves.umct", pack_waveforms(w));
      const auto y_cal = anechoic_capture(pn, resp, cal_d_ane, carrier_hz,
                                          bandwidth_hz, sound_os);
      Waveforms calw;
      calw.n_rx = calw.n_tx = 1;
      calw.n_samples = y_cal.size();
      calw.sample_rate_hz = bandwidth_hz * sound_os;
      calw.data = y_cal;
      save_tensor(out_dir + "/cal.umct", pack_waveforms(calw));
      std::cout << "wrote " << out_dir << "/waves.umct and cal.umct\n";
    } else if (*cal_cmd) {
      const ChannelTensor meas = load_tensor(cal_meas);
      const ChannelTensor ref = load_tensor(cal_ref);
      Waveforms w;
      w.n_rx = meas.n_rx();
      w.n_tx = meas.n_tx();
      w.n_samples = meas.n_freq();
      w.sample_rate_hz = bandwidth_hz * cal_os;
      w.data.resize(w.n_rx * w.n_tx * w.n_samples);
      for (std::size_t q = 0; q < w.n_rx; ++q)
        for (std::size_t p = 0; p < w.n_tx; ++p)
          for (std::size_t i = 0; i < w.n_samples; ++i)
            w.pair(q, p)[i] = meas.at(0, i, q, p);
      std::vector<cxd> y_cal(ref.n_freq());
      for (std::size_t i = 0; i < y_cal.size(); ++i)
        y_cal[i] = ref.at(0, i, 0, 0);
      const Cir cir = ota_calibrate_all(
          w, y_cal, cal_d_ane, carrier_hz, bandwidth_hz, cal_os,
          cal_relative ? CalibrationReference::kAnechoicRelative
                       : CalibrationReference::kAbsolute);
      save_tensor(out_dir + "/cir.umct", cir_container(cir));
      std::cout << "wrote " << out_dir << "/cir.umct\n";
    } else if (*sage_cmd) {
      const ChannelTensor t = load_tensor(sage_tensor, carrier_hz,
                                          bandwidth_hz);
      const SageResult res =
          sage_estimate(t, sage_tx.build(), sage_rx.build(), sage_cfg);
      write_mpc_csv(out_dir + "/mpcs.csv", res.mpcs);
      std::cout << res.mpcs.size() << " paths, residual "
                << res.residual_power_db << " dB, "
                << (res.converged ? "converged" : "not converged") << " in "
                << res.iterations << " sweeps; wrote " << out_dir
                << "/mpcs.csv\n";
    } else if (*plfit_cmd) {
      const auto samples = read_pl_csv(plfit_csv);
      FitResult fit = plfit_model == "fi" ? fit_fi(samples)
                                          : fit_ci(samples, carrier_hz);
      write_pathloss_report(out_dir + "/pathloss.csv", {{plfit_model, fit}});
      if (fit.model == PathLossModel::kCi)
        std::cout << "PLE " << fit.ple << ", sigma " << fit.sigma_db
                  << " dB\n";
      else
        std::cout << "alpha " << fit.alpha_fi << " dB, beta " << fit.beta_fi
                  << ", sigma " << fit.sigma_db << " dB\n";
    } else if (*stats_cmd) {
      const auto mpcs = read_mpc_csv(stats_mpcs);
      const SpreadStats s = spread_stats(mpcs);
      std::cout << "rms_ds " << s.rms_ds_s * 1e9 << " ns, asa " << s.asa_deg
                << " deg, asd " << s.asd_deg << " deg, esd " << s.esd_deg
                << " deg\n";
    } else if (*sns_cmd) {
      const ChannelTensor t = load_tensor(sns_tensor);
      std::cout << "cscf " << cscf(t) << "\n";
    } else if (*chd_cmd) {
      const DatasetManifest m = load_manifest(chd_manifest);
      const std::string base =
          std::filesystem::path(chd_manifest).parent_path().string();
      if (m.links.size() < 2) {
        std::cout << "manifest has fewer than 2 links; nothing to do\n";
        return 0;
      }
      HardeningEnsemble ens;
      for (const LinkRecord &l : m.links)
        ens.tensors.push_back(load_tensor(
            (std::filesystem::path(base) / l.tensor_blob).string(),
            l.carrier_hz, l.bandwidth_hz));
      std::vector<ChdRow> rows;
      for (std::size_t n_rx = 1; n_rx <= ens.tensors.front().n_rx();
           n_rx *= 2)
        rows.push_back({"manifest", n_rx, chd(ens, n_rx)});
      write_chd_report(out_dir + "/chd.csv", rows);
      std::cout << "wrote " << out_dir << "/chd.csv\n";
    } else if (*cap_cmd) {
      const ChannelTensor t = load_tensor(cap_tensor, carrier_hz,
                                          bandwidth_hz);
      const CapacitySamples cs = capacity(t, cap_snr);
      CapacityRow row;
      row.scenario = "tensor";
      row.snr_db = cap_snr;
      row.mean_bps_hz = cs.mean();
      row.std_bps_hz = cs.stddev();
      row.normal_fit = fit_normal(cs.values);
      row.gmm_fit = cs.values.size() >= 4 ? fit_gmm2(cs.values) : row.normal_fit;
      row.selected = row.normal_fit.bic <= row.gmm_fit.bic ? "normal" : "gmm2";
      write_capacity_report(out_dir + "/capacity.csv", {row});
      write_capacity_cdf(out_dir + "/capacity_cdf.csv", "tensor",
                         empirical_cdf(cs.values));
      std::cout << "mean " << row.mean_bps_hz << " bit/s/Hz, std "
                << row.std_bps_hz << "; wrote " << out_dir
                << "/capacity.csv\n";
    } else if (*suite_cmd) {
      RunConfig rc;
      if (!config_path.empty())
        rc = RunConfig::from_config(KeyValueConfig::from_file(config_path));
      if (app.count("--seed"))
        rc.seed = seed;
      if (app.count("--out"))
        rc.out_dir = out_dir;
      const SuiteReport rep = run_scenario_suite(rc);
      std::cout << "suite: " << rep.n_ok << "/" << rep.n_links
                << " links ok; reports under " << rep.out_dir << "/reports\n";
      for (const LinkFailure &fl : rep.failures)
        std::cerr << "FAILED " << fl.link_id << ": " << fl.error << "\n";
      if (rep.n_links == 0)
        std::cerr << "warning: empty suite\n";
      return rep.failures.empty() ? 0 : 1;
    } else if (*import_cmd) {
      const DatasetManifest m = import_external(import_meta, import_base);
      save_manifest(out_dir + "/manifest.json", m);
      std::cout << "imported " << m.links.size() << " links; wrote "
                << out_dir << "/manifest.json\n";
      if (m.links.empty())
        std::cerr << "warning: empty manifest\n";
    }
  } catch (const ConfigError &e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
