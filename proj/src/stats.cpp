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

#include "umic/stats.hpp"

#include <algorithm>
#include <stdexcept>

#include "umic/propagation.hpp"

namespace umic {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y = intercept + slope * x.
LineFit ols(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12 * std::max(1.0, n * sxx))
    throw std::invalid_argument("rank-deficient regression: need distinct "
                                "abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

double residual_rms(std::span<const double> res) {
  double acc = 0.0;
  for (double r : res)
    acc += r * r;
  return std::sqrt(acc / static_cast<double>(res.size()));
}

} // namespace

std::string to_string(PathLossModel m) {
  switch (m) {
  case PathLossModel::kCi:
    return "CI";
  case PathLossModel::kFi:
    return "FI";
  case PathLossModel::kCost235Out:
    return "COST235-out";
  case PathLossModel::kCost235In:
    return "COST235-in";
  }
  return "unknown";
}

double omni_path_loss(const std::vector<Mpc> &mpcs, double d_ane_m,
                      double carrier_hz) {
  if (mpcs.empty())
    throw std::invalid_argument("no paths above threshold");
  double p = 0.0;
  for (const Mpc &m : mpcs)
    p += std::norm(m.amplitude);
  if (p <= 0.0)
    throw std::invalid_argument("total multipath power is zero");
  return -linear_to_db(p) + fspl_db(d_ane_m, carrier_hz);
}

FitResult fit_ci(const std::vector<PathLossSample> &samples, double carrier_hz,
                 double d0_m) {
  if (samples.size() < 2)
    throw std::invalid_argument("need at least two samples");
  const double fspl0 = fspl_db(d0_m, carrier_hz);

  // One-parameter least squares through the anchored intercept.
  double sxx = 0.0, sxy = 0.0;
  bool distinct = false;
  for (const PathLossSample &s : samples) {
    const double x = 10.0 * std::log10(s.distance_m / d0_m);
    const double y = s.pl_db - fspl0;
    sxx += x * x;
    sxy += x * y;
    if (std::abs(s.distance_m - samples.front().distance_m) >
        1e-12 * samples.front().distance_m)
      distinct = true;
  }
  if (!distinct || sxx <= 0.0)
    throw std::invalid_argument("all distances identical: PLE not "
                                "identifiable");

  FitResult r;
  r.model = PathLossModel::kCi;
  r.ple = sxy / sxx;
  r.d0_m = d0_m;
  r.freq_hz = carrier_hz;
  r.n_samples = samples.size();

  std::vector<double> res(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = 10.0 * std::log10(samples[i].distance_m / d0_m);
    res[i] = samples[i].pl_db - (fspl0 + r.ple * x);
  }
  r.rmse_db = residual_rms(res);
  r.sigma_db = r.rmse_db;
  return r;
}

FitResult fit_fi(const std::vector<PathLossSample> &samples, double d0_m) {
  if (samples.size() < 2)
    throw std::invalid_argument("need at least two samples");
  std::vector<double> x(samples.size()), y(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    x[i] = 10.0 * std::log10(samples[i].distance_m / d0_m);
    y[i] = samples[i].pl_db;
  }
  const LineFit f = ols(x, y);

  FitResult r;
  r.model = PathLossModel::kFi;
  r.alpha_fi = f.intercept;
  r.beta_fi = f.slope;
  r.d0_m = d0_m;
  r.n_samples = samples.size();

  std::vector<double> res(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    res[i] = y[i] - (f.intercept + f.slope * x[i]);
  r.rmse_db = residual_rms(res);
  r.sigma_db = r.rmse_db;
  return r;
}

FitResult fit_cost235(const std::vector<FoliageSample> &samples,
                      double freq_mhz, std::optional<double> b_fixed,
                      PathLossModel label) {
  if (label != PathLossModel::kCost235Out && label != PathLossModel::kCost235In)
    throw std::invalid_argument("label must be a vegetation model");
  if (samples.size() < 2)
    throw std::invalid_argument("need at least two samples");
  if (!b_fixed.has_value())
    throw std::invalid_argument(
        "single-frequency data cannot identify the frequency exponent B; "
        "fix B explicitly");
  for (const FoliageSample &s : samples) {
    if (s.depth_m <= 0.0)
      throw std::invalid_argument("vegetation depths must be > 0 for fitting");
    if (s.excess_loss_db <= 0.0)
      throw std::domain_error("excess losses must be > 0 dB (log-domain fit)");
  }

  bool distinct = false;
  for (const FoliageSample &s : samples)
    if (std::abs(s.depth_m - samples.front().depth_m) >
        1e-12 * samples.front().depth_m)
      distinct = true;
  if (!distinct)
    throw std::invalid_argument("all depths identical: C not identifiable");

  // log10 L = [log10 A + B log10 f] + C log10 d
  std::vector<double> x(samples.size()), y(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    x[i] = std::log10(samples[i].depth_m);
    y[i] = std::log10(samples[i].excess_loss_db);
  }
  const LineFit f = ols(x, y);

  FitResult r;
  r.model = label;
  r.b = *b_fixed;
  r.c = f.slope;
  r.a = std::pow(10.0, f.intercept - r.b * std::log10(freq_mhz));
  r.freq_hz = freq_mhz * 1e6;
  r.n_samples = samples.size();

  // Residuals reported in the dB domain of the excess loss itself.
  std::vector<double> res(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double model =
        r.a * std::pow(freq_mhz, r.b) * std::pow(samples[i].depth_m, r.c);
    res[i] = samples[i].excess_loss_db - model;
  }
  r.rmse_db = residual_rms(res);
  r.sigma_db = r.rmse_db;
  return r;
}

FitResult fit_cost235_joint(const std::vector<FoliageSampleF> &samples,
                            PathLossModel label) {
  if (samples.size() < 3)
    throw std::invalid_argument("need at least three samples");
  bool multi_freq = false;
  for (const FoliageSampleF &s : samples) {
    if (s.depth_m <= 0.0 || s.freq_mhz <= 0.0)
      throw std::invalid_argument("depths and frequencies must be > 0");
    if (s.excess_loss_db <= 0.0)
      throw std::domain_error("excess losses must be > 0 dB (log-domain fit)");
    if (std::abs(s.freq_mhz - samples.front().freq_mhz) >
        1e-12 * samples.front().freq_mhz)
      multi_freq = true;
  }
  if (!multi_freq)
    throw std::invalid_argument(
        "single-frequency data cannot identify B; use fit_cost235");

  // Normal equations for log10 L = b0 + B log10 f + C log10 d.
  double s11 = 0, s1f = 0, s1d = 0, sff = 0, sfd = 0, sdd = 0;
  double sy1 = 0, syf = 0, syd = 0;
  for (const FoliageSampleF &s : samples) {
    const double lf = std::log10(s.freq_mhz);
    const double ld = std::log10(s.depth_m);
    const double y = std::log10(s.excess_loss_db);
    s11 += 1.0;
    s1f += lf;
    s1d += ld;
    sff += lf * lf;
    sfd += lf * ld;
    sdd += ld * ld;
    sy1 += y;
    syf += y * lf;
    syd += y * ld;
  }
  // 3x3 solve by Cramer's rule.
  const double det = s11 * (sff * sdd - sfd * sfd) -
                     s1f * (s1f * sdd - sfd * s1d) +
                     s1d * (s1f * sfd - sff * s1d);
  if (std::abs(det) < 1e-12)
    throw std::invalid_argument("degenerate design matrix");
  const double b0 = (sy1 * (sff * sdd - sfd * sfd) -
                     s1f * (syf * sdd - sfd * syd) +
                     s1d * (syf * sfd - sff * syd)) /
                    det;
  const double bb = (s11 * (syf * sdd - syd * sfd) -
                     sy1 * (s1f * sdd - sfd * s1d) +
                     s1d * (s1f * syd - syf * s1d)) /
                    det;
  const double cc = (s11 * (sff * syd - sfd * syf) -
                     s1f * (s1f * syd - syf * s1d) +
                     sy1 * (s1f * sfd - sff * s1d)) /
                    det;

  FitResult r;
  r.model = label;
  r.a = std::pow(10.0, b0);
  r.b = bb;
  r.c = cc;
  r.n_samples = samples.size();
  std::vector<double> res(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double model = r.a * std::pow(samples[i].freq_mhz, r.b) *
                         std::pow(samples[i].depth_m, r.c);
    res[i] = samples[i].excess_loss_db - model;
  }
  r.rmse_db = residual_rms(res);
  r.sigma_db = r.rmse_db;
  return r;
}

double rms_ds(const std::vector<Mpc> &mpcs) {
  if (mpcs.empty())
    throw std::invalid_argument("no paths");
  double psum = 0.0, m1 = 0.0, m2 = 0.0;
  for (const Mpc &m : mpcs) {
    const double p = std::norm(m.amplitude);
    psum += p;
    m1 += p * m.delay_s;
    m2 += p * m.delay_s * m.delay_s;
  }
  if (psum <= 0.0)
    throw std::invalid_argument("total power is zero");
  m1 /= psum;
  m2 /= psum;
  return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

AngularSpread angular_spread(std::span<const double> angles_rad,
                             std::span<const double> powers) {
  if (angles_rad.size() != powers.size() || angles_rad.empty())
    throw std::invalid_argument("angle and power lists must match");
  double psum = 0.0;
  cxd resultant{0.0, 0.0};
  for (std::size_t i = 0; i < angles_rad.size(); ++i) {
    if (powers[i] < 0.0)
      throw std::invalid_argument("powers must be >= 0");
    psum += powers[i];
    resultant += powers[i] * std::polar(1.0, angles_rad[i]);
  }
  if (psum <= 0.0)
    throw std::invalid_argument("total power must be > 0");

  constexpr double kResultantFloor = 1e-12;
  AngularSpread as;
  double r = std::abs(resultant) / psum;
  if (r < kResultantFloor) {
    // The formula diverges for a vanishing resultant; report the finite
    // saturation value and flag it.
    as.saturated = true;
    r = kResultantFloor;
  }
  r = std::min(r, 1.0);
  as.rad = std::sqrt(-2.0 * std::log(r));
  as.deg = rad_to_deg(as.rad);
  return as;
}

LognormalFit lognormal_fit(std::span<const double> values) {
  if (values.empty())
    throw std::invalid_argument("no values");
  std::vector<double> lv(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0))
      throw std::domain_error("lognormal fit requires positive values");
    lv[i] = std::log10(values[i]);
  }
  double mu = 0.0;
  for (double v : lv)
    mu += v;
  mu /= static_cast<double>(lv.size());
  double var = 0.0;
  for (double v : lv)
    var += (v - mu) * (v - mu);
  var /= static_cast<double>(lv.size());
  return {mu, std::sqrt(var)};
}

PdapGrid pdap_grid(const std::vector<Mpc> &mpcs, std::size_t delay_bins,
                   std::size_t angle_bins, double floor_db) {
  if (delay_bins == 0 || angle_bins == 0)
    throw std::invalid_argument("bin counts must be >= 1");

  PdapGrid g;
  g.n_delay = delay_bins;
  g.n_angle = angle_bins;
  g.angle_min_rad = -kPi;
  g.angle_max_rad = kPi;
  g.delay_min_s = 0.0;
  g.delay_max_s = 1e-9;
  for (const Mpc &m : mpcs)
    g.delay_max_s = std::max(g.delay_max_s, m.delay_s);
  g.delay_max_s *= 1.0 + 1e-12;

  std::vector<double> lin(delay_bins * angle_bins, 0.0);
  for (const Mpc &m : mpcs) {
    const double p = std::norm(m.amplitude);
    std::size_t d = static_cast<std::size_t>(
        std::floor(m.delay_s / g.delay_max_s * static_cast<double>(delay_bins)));
    std::size_t a = static_cast<std::size_t>(std::floor(
        (wrap_angle(m.aaoa_rad) + kPi) / kTwoPi * static_cast<double>(angle_bins)));
    d = std::min(d, delay_bins - 1);
    a = std::min(a, angle_bins - 1);
    lin[d * angle_bins + a] += p;
    g.total_linear_power += p;
  }
  g.power_db.resize(lin.size());
  for (std::size_t i = 0; i < lin.size(); ++i)
    g.power_db[i] = lin[i] > 0.0 ? std::max(linear_to_db(lin[i]), floor_db)
                                 : floor_db;
  return g;
}

SpreadStats spread_stats(const std::vector<Mpc> &mpcs) {
  if (mpcs.empty())
    throw std::invalid_argument("no paths");
  std::vector<double> p(mpcs.size()), aoa(mpcs.size()), aod(mpcs.size()),
      eod(mpcs.size());
  for (std::size_t i = 0; i < mpcs.size(); ++i) {
    p[i] = std::norm(mpcs[i].amplitude);
    aoa[i] = mpcs[i].aaoa_rad;
    aod[i] = mpcs[i].aaod_rad;
    eod[i] = mpcs[i].eaod_rad;
  }
  SpreadStats s;
  s.rms_ds_s = rms_ds(mpcs);
  s.asa_deg = angular_spread(aoa, p).deg;
  s.asd_deg = angular_spread(aod, p).deg;
  s.esd_deg = angular_spread(eod, p).deg;
  return s;
}

SpreadSummary summarize_spreads(const std::vector<SpreadStats> &links) {
  if (links.empty())
    throw std::invalid_argument("no links");
  std::vector<double> ds, asa, asd, esd;
  for (const SpreadStats &s : links) {
    ds.push_back(s.rms_ds_s);
    asa.push_back(std::max(s.asa_deg, 1e-12));
    asd.push_back(std::max(s.asd_deg, 1e-12));
    esd.push_back(std::max(s.esd_deg, 1e-12));
  }
  SpreadSummary out;
  out.ds = lognormal_fit(ds);
  out.asa = lognormal_fit(asa);
  out.asd = lognormal_fit(asd);
  out.esd = lognormal_fit(esd);
  out.n_links = links.size();
  return out;
}

} // namespace umic
