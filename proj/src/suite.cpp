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

#include "umic/suite.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <thread>

#include "umic/capacity.hpp"
#include "umic/newchar.hpp"
#include "umic/propagation.hpp"
#include "umic/reference.hpp"
#include "umic/reports.hpp"
#include "umic/rng.hpp"
#include "umic/sage.hpp"
#include "umic/sounding.hpp"
#include "umic/tensor_io.hpp"

namespace umic {

namespace fs = std::filesystem;

RunConfig RunConfig::from_config(const KeyValueConfig &cfg) {
  RunConfig rc;
  rc.out_dir = cfg.get_string("out_dir", rc.out_dir);
  rc.seed = cfg.get_uint("seed", rc.seed);
  if (cfg.has("scenarios")) {
    rc.scenarios.clear();
    for (const std::string &s : cfg.get_list("scenarios"))
      rc.scenarios.push_back(scenario_class_from_string(s));
  }
  rc.links_per_scenario = static_cast<std::size_t>(
      cfg.get_uint("links_per_scenario", rc.links_per_scenario));
  rc.paper_layout = cfg.get_bool("paper_layout", rc.paper_layout);
  rc.n_rx = static_cast<std::size_t>(cfg.get_uint("n_rx", rc.n_rx));
  rc.n_tx = static_cast<std::size_t>(cfg.get_uint("n_tx", rc.n_tx));
  rc.pn_width = static_cast<unsigned>(cfg.get_uint("pn_width", rc.pn_width));
  rc.oversample =
      static_cast<unsigned>(cfg.get_uint("oversample", rc.oversample));
  rc.carrier_hz = cfg.get_double("carrier_hz", rc.carrier_hz);
  rc.bandwidth_hz = cfg.get_double("bandwidth_hz", rc.bandwidth_hz);
  rc.snr_db = cfg.get_double("snr_db", rc.snr_db);
  rc.noise_floor_dbm = cfg.get_double("noise_floor_dbm", rc.noise_floor_dbm);
  rc.d_ane_m = cfg.get_double("d_ane_m", rc.d_ane_m);
  rc.n_scatterers =
      static_cast<std::size_t>(cfg.get_uint("n_scatterers", rc.n_scatterers));
  rc.jobs = static_cast<std::size_t>(cfg.get_uint("jobs", rc.jobs));
  return rc;
}

std::size_t RunConfig::links_for(ScenarioClass c) const {
  if (!paper_layout)
    return links_per_scenario;
  switch (c) {
  case ScenarioClass::kNfLos:
    return 38;
  case ScenarioClass::kNfFoliage:
    return 7;
  case ScenarioClass::kFfFoliage:
    return 10;
  case ScenarioClass::kFfLos:
    return 26;
  }
  return links_per_scenario;
}

namespace {

struct ClassProfile {
  double d_min, d_max;
  double foliage_min, foliage_max;
  double tx_height, rx_height;
  double k_factor_db;    // LoS-to-scatter power ratio
  double delay_decay_s;  // scatter excess-delay scale
};

ClassProfile class_profile(ScenarioClass c) {
  switch (c) {
  case ScenarioClass::kNfLos:
    return {21.0, 42.0, 0.0, 0.0, 14.7, 1.8, 10.0, 10e-9};
  case ScenarioClass::kNfFoliage:
    return {21.0, 29.0, 0.5, 3.0, 14.7, 1.8, 4.0, 15e-9};
  case ScenarioClass::kFfFoliage:
    return {44.0, 70.0, 3.0, 12.0, 16.5, 1.8, 0.0, 45e-9};
  case ScenarioClass::kFfLos:
    return {73.0, 222.0, 0.0, 0.0, 16.5, 1.8, 12.0, 8e-9};
  }
  return {21.0, 42.0, 0.0, 0.0, 14.7, 1.8, 10.0, 10e-9};
}

constexpr double kCaptureLeadTime = 40e-9; // earliest path placement

} // namespace

GeneratedLink generate_link(ScenarioClass cls, const RunConfig &cfg,
                            std::uint64_t link_seed) {
  const ClassProfile prof = class_profile(cls);
  Rng rng(link_seed);

  GeneratedLink out;
  ScenarioConfig &sc = out.scenario;
  sc.carrier_hz = cfg.carrier_hz;
  sc.bandwidth_hz = cfg.bandwidth_hz;
  sc.scenario_class = cls;
  sc.noise_floor_dbm = cfg.noise_floor_dbm;
  sc.seed = link_seed;
  sc.link_distance_m = rng.uniform(prof.d_min, prof.d_max);
  sc.foliage_depth_m = prof.foliage_max > 0.0
                           ? rng.uniform(prof.foliage_min, prof.foliage_max)
                           : 0.0;

  const std::size_t pn_len = (std::size_t{1} << cfg.pn_width) - 1;
  sc.n_freq = pn_len;
  sc.delay_window_s = static_cast<double>(pn_len) / cfg.bandwidth_hz;

  // Pose: Tx mast at the origin, Rx at street level along +x; both arrays
  // face each other.
  const double dh = prof.tx_height - prof.rx_height;
  const double d3 = sc.link_distance_m;
  const double dx = std::sqrt(std::max(d3 * d3 - dh * dh, 1.0));

  out.tx_ref.kind = "l_shaped_ula";
  out.tx_ref.n = cfg.n_tx;
  out.tx_ref.spacing_m = kDefaultSpacing15GHz;
  out.tx_ref.origin = {0.0, 0.0, prof.tx_height};
  out.tx_ref.tilt_rad = -deg_to_rad(15.0);

  out.rx_ref.kind = cfg.n_rx >= 32 ? "quad_panel" : "planar";
  out.rx_ref.n = cfg.n_rx;
  out.rx_ref.rows = 2;
  out.rx_ref.cols = cfg.n_rx / 2;
  out.rx_ref.spacing_m = kDefaultSpacing15GHz;
  out.rx_ref.origin = {dx, 0.0, prof.rx_height};
  out.rx_ref.bearing_rad = kPi; // face back toward the mast

  sc.tx_geometry = out.tx_ref.build();
  sc.rx_geometry = out.rx_ref.build();

  // Total omni gain from the class path-loss model plus vegetation excess.
  const bool nf = cls == ScenarioClass::kNfLos || cls == ScenarioClass::kNfFoliage;
  const CiRef &ci = nf ? kCiNfLos : kCiFfLos;
  double pl = fspl_db(1.0, sc.carrier_hz) +
              10.0 * ci.ple * std::log10(d3) + rng.normal(0.0, ci.sigma_db);
  if (sc.foliage_depth_m > 0.0)
    pl += foliage_excess_loss_db(sc.foliage_depth_m, sc.carrier_hz / 1e6,
                                 kCost235OutOfLeaf);
  out.true_pl_db = pl;
  const double omni_gain = db_to_linear(-pl);

  // Power split: LoS at the configured K factor, scatterers exponential in
  // excess delay.
  const std::size_t n_scat = cfg.n_scatterers;
  std::vector<double> rel(n_scat + 1);
  rel[0] = db_to_linear(prof.k_factor_db);
  double rel_sum = rel[0];
  std::vector<double> excess(n_scat + 1, 0.0);
  for (std::size_t i = 1; i <= n_scat; ++i) {
    excess[i] = 4e-9 + prof.delay_decay_s * (-std::log(rng.uniform()));
    rel[i] = std::exp(-excess[i] / std::max(prof.delay_decay_s, 1e-9)) *
             db_to_linear(rng.normal(0.0, 2.0));
    rel_sum += rel[i];
  }

  const double tau_los = d3 / kSpeedOfLight;
  const double capture_offset = tau_los - kCaptureLeadTime;

  Mpc los = make_los_mpc(sc.tx_geometry, sc.rx_geometry, {1.0, 0.0});
  los.amplitude = std::polar(std::sqrt(omni_gain * rel[0] / rel_sum),
                             rng.uniform(-kPi, kPi));
  los.delay_s -= capture_offset;
  out.mpcs.push_back(los);

  for (std::size_t i = 1; i <= n_scat; ++i) {
    // lateral single-bounce scatterer in the street canyon
    const double along = rng.uniform(0.15, 0.85) * dx;
    const double side = (rng.uniform() < 0.5 ? -1.0 : 1.0) *
                        rng.uniform(2.0, 12.0 + 0.05 * dx);
    const Vec3 bounce{along, side, rng.uniform(0.5, 4.0)};
    Mpc m = make_single_bounce_mpc(sc.tx_geometry, sc.rx_geometry, bounce,
                                   {1.0, 0.0});
    m.amplitude = std::polar(std::sqrt(omni_gain * rel[i] / rel_sum),
                             rng.uniform(-kPi, kPi));
    m.delay_s -= capture_offset;
    if (m.delay_s < sc.delay_window_s)
      out.mpcs.push_back(m);
  }
  return out;
}

std::vector<PathLossSample> gen_ci_samples(double ple, double sigma_db,
                                           double d_min_m, double d_max_m,
                                           std::size_t n, double carrier_hz,
                                           std::uint64_t seed, double d0_m) {
  Rng rng(seed);
  std::vector<PathLossSample> out(n);
  const double fspl0 = fspl_db(d0_m, carrier_hz);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = rng.uniform(d_min_m, d_max_m);
    out[i].distance_m = d;
    out[i].pl_db =
        fspl0 + 10.0 * ple * std::log10(d / d0_m) + rng.normal(0.0, sigma_db);
  }
  return out;
}

std::vector<PathLossSample> gen_fi_samples(double alpha_db, double beta,
                                           double sigma_db, double d_min_m,
                                           double d_max_m, std::size_t n,
                                           std::uint64_t seed, double d0_m) {
  Rng rng(seed);
  std::vector<PathLossSample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = rng.uniform(d_min_m, d_max_m);
    out[i].distance_m = d;
    out[i].pl_db = alpha_db + 10.0 * beta * std::log10(d / d0_m) +
                   rng.normal(0.0, sigma_db);
  }
  return out;
}

std::vector<FoliageSample> gen_cost235_samples(double a, double b, double c,
                                               double sigma_db,
                                               double freq_mhz,
                                               double depth_min_m,
                                               double depth_max_m,
                                               std::size_t n,
                                               std::uint64_t seed) {
  Rng rng(seed);
  std::vector<FoliageSample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = rng.uniform(depth_min_m, depth_max_m);
    out[i].depth_m = d;
    out[i].excess_loss_db = a * std::pow(freq_mhz, b) * std::pow(d, c) +
                            rng.normal(0.0, sigma_db);
    out[i].excess_loss_db = std::max(out[i].excess_loss_db, 0.1);
  }
  return out;
}

namespace {

struct LinkProducts {
  LinkRecord record;
  bool ok = false;
  std::string error;
  double omni_pl_db = 0.0;
  SpreadStats spreads{};
  double cscf_value = 0.0;
  ApertureRow aperture{};
  std::vector<double> capacity_samples;
  ChannelTensor tensor; // calibrated, anechoic-relative
};

LinkProducts process_link(const RunConfig &cfg, ScenarioClass cls,
                          std::size_t index, std::uint64_t link_seed,
                          const std::string &blob_dir) {
  LinkProducts lp;
  lp.record.link_id =
      to_string(cls) + "_" + std::to_string(index);
  try {
    GeneratedLink gen = generate_link(cls, cfg, link_seed);

    lp.record.scenario_class = cls;
    lp.record.distance_m = gen.scenario.link_distance_m;
    lp.record.foliage_depth_m = gen.scenario.foliage_depth_m;
    lp.record.carrier_hz = gen.scenario.carrier_hz;
    lp.record.bandwidth_hz = gen.scenario.bandwidth_hz;
    lp.record.tx_geometry = gen.tx_ref;
    lp.record.rx_geometry = gen.rx_ref;

    // synth on the PN in-band grid
    ChannelTensor truth = synth_channel(gen.scenario, gen.mpcs,
                                        Wavefront::kPlanar);

    // sounder emulation and OTA calibration (anechoic-relative gains)
    const PnSequence pn = gen_pn(cfg.pn_width);
    const SounderResponse resp;
    const Cir cir_true = cir_from_tensor(truth);
    const Waveforms rx_waves =
        sound_link(cir_true, pn, resp, cfg.noise_floor_dbm, cfg.oversample,
                   link_seed ^ 0xabcdef, 1);
    const std::vector<cxd> y_cal = anechoic_capture(
        pn, resp, cfg.d_ane_m, cfg.carrier_hz, cfg.bandwidth_hz,
        cfg.oversample);
    const Cir cal = ota_calibrate_all(
        rx_waves, y_cal, cfg.d_ane_m, cfg.carrier_hz, cfg.bandwidth_hz,
        cfg.oversample, CalibrationReference::kAnechoicRelative);
    lp.tensor = tensor_from_cir(cal, cfg.carrier_hz);

    // multipath extraction
    SageConfig sage_cfg;
    sage_cfg.window_rx = std::min<std::size_t>(16, lp.tensor.n_rx());
    sage_cfg.window_tx = std::min<std::size_t>(32, lp.tensor.n_tx());
    sage_cfg.max_paths = cfg.n_scatterers + 2;
    sage_cfg.delay_grid_s = 2e-9;
    sage_cfg.angle_grid_rad = deg_to_rad(2.0);
    sage_cfg.el_min_rad = -kPi / 4;
    sage_cfg.el_max_rad = kPi / 4;
    sage_cfg.max_iter = 8;
    sage_cfg.conv_tol = 1e-3;
    const SageResult sage = sage_estimate(lp.tensor, gen.scenario.tx_geometry,
                                          gen.scenario.rx_geometry, sage_cfg);
    if (sage.mpcs.empty())
      throw std::runtime_error("no multipath found above threshold");

    // statistics
    lp.omni_pl_db = omni_path_loss(sage.mpcs, cfg.d_ane_m, cfg.carrier_hz);
    lp.spreads = spread_stats(sage.mpcs);

    // spatial non-stationarity and aperture trend
    lp.cscf_value = cscf(lp.tensor);
    {
      const auto pdp_avg = pdp(cal);
      std::size_t k_peak = 0;
      for (std::size_t k = 1; k < pdp_avg.size(); ++k)
        if (pdp_avg[k] > pdp_avg[k_peak])
          k_peak = k;
      // LoS tap across the horizontal transmit leg, first receive element
      const std::size_t leg = cfg.n_tx / 2;
      AperturePathTrace trace;
      std::vector<double> raw_phase;
      for (std::size_t p = 0; p < leg; ++p) {
        const cxd tap = cal.tap(0, p, k_peak);
        trace.element_index.push_back(static_cast<double>(p));
        trace.power_db.push_back(linear_to_db(std::max(std::norm(tap), 1e-300)));
        raw_phase.push_back(std::arg(tap));
      }
      trace.phase_rad = unwrap_phase(raw_phase);
      const ApertureTrendFit ft = fit_aperture_trends(trace);
      lp.aperture.power_std_db = ft.power_std_db;
      lp.aperture.power_linfit_rmse_db = ft.power_linfit_rmse_db;
      lp.aperture.phase_linfit_rmse_rad = ft.phase_linfit_rmse_rad;
      lp.aperture.phase_quadfit_rmse_rad = ft.phase_quadfit_rmse_rad;
    }

    // capacity samples on a decimated grid to keep the eigenproblem count low
    const std::size_t step = std::max<std::size_t>(1, lp.tensor.n_freq() / 16);
    lp.capacity_samples = capacity(lp.tensor.decimate_freq(step),
                                   cfg.snr_db).values;

    lp.record.tensor_blob = "blobs/" + lp.record.link_id + ".umct";
    save_tensor(blob_dir + "/" + lp.record.link_id + ".umct", lp.tensor);
    lp.ok = true;
  } catch (const std::exception &e) {
    lp.ok = false;
    lp.error = e.what();
  }
  return lp;
}

} // namespace

SuiteReport run_scenario_suite(const RunConfig &cfg) {
  if (cfg.scenarios.empty())
    throw ConfigError("no scenarios requested");
  if (cfg.n_rx < 2 || cfg.n_tx < 2)
    throw ConfigError("suite needs at least 2 x 2 arrays");

  fs::create_directories(cfg.out_dir);
  fs::create_directories(cfg.out_dir + "/blobs");
  fs::create_directories(cfg.out_dir + "/reports");

  struct Job {
    ScenarioClass cls;
    std::size_t index;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  std::size_t global_index = 0;
  for (ScenarioClass cls : cfg.scenarios)
    for (std::size_t i = 0; i < cfg.links_for(cls); ++i)
      jobs.push_back({cls, i, cfg.seed + 7919ull * (++global_index)});

  const std::size_t workers =
      cfg.jobs > 0 ? cfg.jobs
                   : std::max<std::size_t>(1, std::thread::hardware_concurrency());

  std::vector<LinkProducts> products(jobs.size());
  std::size_t next = 0;
  while (next < jobs.size()) {
    const std::size_t batch = std::min(workers, jobs.size() - next);
    std::vector<std::future<LinkProducts>> futs;
    futs.reserve(batch);
    for (std::size_t b = 0; b < batch; ++b) {
      const Job &jb = jobs[next + b];
      futs.push_back(std::async(std::launch::async, [&, jb]() {
        return process_link(cfg, jb.cls, jb.index, jb.seed,
                            cfg.out_dir + "/blobs");
      }));
    }
    for (std::size_t b = 0; b < batch; ++b)
      products[next + b] = futs[b].get();
    next += batch;
  }

  // ---- single-writer report assembly, ordered by link id ----
  SuiteReport rep;
  rep.out_dir = cfg.out_dir;
  rep.n_links = products.size();

  DatasetManifest manifest;
  manifest.provenance_kind = "synthetic";
  manifest.seed = cfg.seed;
  manifest.provenance_note = "scenario suite";

  std::map<ScenarioClass, std::vector<const LinkProducts *>> by_class;
  for (const LinkProducts &lp : products) {
    if (!lp.ok) {
      rep.failures.push_back({lp.record.link_id, lp.error});
      continue;
    }
    ++rep.n_ok;
    manifest.links.push_back(lp.record);
    by_class[lp.record.scenario_class].push_back(&lp);
  }

  std::vector<PathLossRow> pl_rows;
  std::vector<SpreadRow> spread_rows;
  std::vector<CscfRow> cscf_rows;
  std::vector<ChdRow> chd_rows;
  std::vector<CapacityRow> cap_rows;
  std::vector<ApertureRow> aperture_rows;

  for (const auto &[cls, links] : by_class) {
    const std::string name = to_string(cls);

    std::vector<PathLossSample> pl_samples;
    std::vector<SpreadStats> spreads;
    std::vector<double> caps;
    HardeningEnsemble ensemble;
    for (const LinkProducts *lp : links) {
      pl_samples.push_back({lp->record.distance_m, lp->omni_pl_db, cls,
                            lp->record.foliage_depth_m});
      spreads.push_back(lp->spreads);
      caps.insert(caps.end(), lp->capacity_samples.begin(),
                  lp->capacity_samples.end());
      ensemble.tensors.push_back(lp->tensor);
      cscf_rows.push_back({lp->record.link_id, name, lp->record.distance_m,
                           lp->cscf_value});
      ApertureRow ar = lp->aperture;
      ar.link_id = lp->record.link_id;
      ar.scenario = name;
      ar.distance_m = lp->record.distance_m;
      aperture_rows.push_back(ar);
    }

    const bool foliage =
        cls == ScenarioClass::kNfFoliage || cls == ScenarioClass::kFfFoliage;
    if (pl_samples.size() >= 2 && !foliage) {
      try {
        pl_rows.push_back({name, fit_ci(pl_samples, cfg.carrier_hz)});
        pl_rows.push_back({name, fit_fi(pl_samples)});
      } catch (const std::exception &) {
        // too few distinct distances; row skipped
      }
    }
    if (foliage && pl_samples.size() >= 2) {
      std::vector<FoliageSample> fol;
      for (const LinkProducts *lp : links)
        fol.push_back(
            {lp->record.foliage_depth_m,
             std::max(lp->omni_pl_db -
                          fspl_db(lp->record.distance_m, cfg.carrier_hz),
                      0.1)});
      try {
        pl_rows.push_back({name, fit_cost235(fol, cfg.carrier_hz / 1e6,
                                             kCost235OutOfLeaf.b,
                                             PathLossModel::kCost235Out)});
        pl_rows.push_back({name, fit_cost235(fol, cfg.carrier_hz / 1e6,
                                             kCost235InLeaf.b,
                                             PathLossModel::kCost235In)});
      } catch (const std::exception &) {
      }
    }

    if (!spreads.empty())
      spread_rows.push_back({name, summarize_spreads(spreads)});

    if (ensemble.tensors.size() >= 2) {
      for (std::size_t n_rx = 1; n_rx <= cfg.n_rx; n_rx *= 2)
        chd_rows.push_back({name, n_rx, chd(ensemble, n_rx)});
    }

    if (caps.size() >= 4) {
      CapacityRow cr;
      cr.scenario = name;
      cr.snr_db = cfg.snr_db;
      DistFit nf_fit = fit_normal(caps);
      DistFit gf = fit_gmm2(caps);
      cr.normal_fit = nf_fit;
      cr.gmm_fit = gf;
      cr.mean_bps_hz = nf_fit.mu;
      cr.std_bps_hz = nf_fit.sigma;
      cr.selected = nf_fit.bic <= gf.bic ? "normal" : "gmm2";
      cap_rows.push_back(cr);
      write_capacity_cdf(cfg.out_dir + "/reports/capacity_cdf_" + name + ".csv",
                         name, empirical_cdf(caps));
    }
  }

  write_pathloss_report(cfg.out_dir + "/reports/pathloss.csv", pl_rows);
  write_spread_report(cfg.out_dir + "/reports/spreads.csv", spread_rows);
  write_cscf_report(cfg.out_dir + "/reports/cscf.csv", cscf_rows);
  write_chd_report(cfg.out_dir + "/reports/chd.csv", chd_rows);
  write_capacity_report(cfg.out_dir + "/reports/capacity.csv", cap_rows);
  write_aperture_report(cfg.out_dir + "/reports/aperture.csv", aperture_rows);

  rep.manifest_path = cfg.out_dir + "/manifest.json";
  save_manifest(rep.manifest_path, manifest);

  std::ofstream log(cfg.out_dir + "/run_log.txt", std::ios::trunc);
  log << "umic suite v" << kTensorFormatVersion << "\n";
  log << "seed " << cfg.seed << "\n";
  log << "arrays " << cfg.n_rx << " x " << cfg.n_tx << ", pn_width "
      << cfg.pn_width << ", oversample " << cfg.oversample << "\n";
  log << "carrier_hz " << cfg.carrier_hz << ", bandwidth_hz "
      << cfg.bandwidth_hz << ", snr_db " << cfg.snr_db << "\n";
  log << "links " << rep.n_links << ", ok " << rep.n_ok << ", failed "
      << rep.failures.size() << "\n";
  for (const LinkFailure &fl : rep.failures)
    log << "FAILED " << fl.link_id << ": " << fl.error << "\n";
  return rep;
}

} // namespace umic
