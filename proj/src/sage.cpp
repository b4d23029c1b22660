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

#include "umic/sage.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace umic {

namespace {

struct PathParams {
  double tau = 0.0;
  double aaoa = 0.0, eaoa = 0.0;
  double aaod = 0.0, eaod = 0.0;
  cxd alpha{0.0, 0.0};

  double power_db() const { return 10.0 * std::log10(std::norm(alpha)); }
};

// Golden-section maximization of a unimodal-ish 1-D objective on [lo, hi].
double golden_max(const std::function<double(double)> &f, double lo,
                  double hi, int iters = 28) {
  const double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? x1 : x2;
}

std::vector<double> grid_points(double lo, double hi, double step) {
  std::vector<double> g;
  if (hi <= lo || step <= 0.0) {
    g.push_back(lo);
    return g;
  }
  for (double v = lo; v <= hi + 0.5 * step; v += step)
    g.push_back(std::min(v, hi));
  return g;
}

// Single-window SAGE on data indexed [k][q][p]. Steering phases are
// evaluated per frequency bin; the uniform frequency grid makes every
// per-bin phase an incremental rotation, which keeps the 1-D coordinate
// searches cheap.
class WindowEstimator {
public:
  WindowEstimator(std::vector<cxd> data, std::vector<double> freq_hz,
                  std::vector<Vec3> rx_elements, std::vector<Vec3> tx_elements,
                  const SageConfig &cfg)
      : x_(std::move(data)), freq_(std::move(freq_hz)),
        rx_el_(std::move(rx_elements)), tx_el_(std::move(tx_elements)),
        cfg_(cfg), nf_(freq_.size()), nq_(rx_el_.size()), np_(tx_el_.size()) {
    f0_ = freq_.front();
    df_ = nf_ > 1 ? freq_[1] - freq_[0] : 0.0;
    residual_ = x_;
    el_fixed_arr_ = cfg_.el_min_rad == cfg_.el_max_rad;
    el_fixed_dep_ = el_fixed_arr_;
    delay_hi_ = cfg_.delay_max_s > 0.0
                    ? cfg_.delay_max_s
                    : (df_ > 0.0 ? 1.0 / df_ - cfg_.delay_grid_s : 0.0);
  }

  SageResult run() {
    SageResult res;
    res.residual_history_db.push_back(residual_power_db());

    detect_paths(res);
    refine_paths(res);
    prune_and_sort(res);

    res.residual_power_db = residual_power_db();
    return res;
  }

private:
  std::size_t idx(std::size_t k, std::size_t q, std::size_t p) const {
    return (k * nq_ + q) * np_ + p;
  }

  double residual_power_db() const {
    double e = 0.0;
    for (const cxd &v : residual_)
      e += std::norm(v);
    const double n = static_cast<double>(residual_.size());
    return e > 0.0 ? linear_to_db(e / n)
                   : -std::numeric_limits<double>::infinity();
  }

  // exp(-j 2 pi f_k d / c) across k as start * step^k.
  struct Rotor {
    cxd start, step;
    Rotor(double f0, double df, double d) {
      const double s = kTwoPi * d / kSpeedOfLight;
      start = std::polar(1.0, -s * f0);
      step = std::polar(1.0, -s * df);
    }
  };

  std::vector<double> element_dots(const std::vector<Vec3> &els, double az,
                                   double el) const {
    const Vec3 u = direction_from_angles(az, el);
    std::vector<double> d(els.size());
    for (std::size_t i = 0; i < els.size(); ++i)
      d[i] = u.dot(els[i]);
    return d;
  }

  // Correlation of `data` with the full path basis; alpha-ready inner
  // product <data, b> with ||b||^2 = nf nq np.
  cxd correlate(const std::vector<cxd> &data, const PathParams &pp) const {
    const auto drx = element_dots(rx_el_, pp.aaoa, pp.eaoa);
    const auto dtx = element_dots(tx_el_, pp.aaod, pp.eaod);
    std::vector<Rotor> rrx, rtx;
    rrx.reserve(nq_);
    rtx.reserve(np_);
    for (double d : drx)
      rrx.emplace_back(f0_, df_, d); // conj of the +<u,x> steering phase
    for (double d : dtx)
      rtx.emplace_back(f0_, df_, d);
    std::vector<cxd> arx(nq_), atx(np_);
    for (std::size_t q = 0; q < nq_; ++q)
      arx[q] = rrx[q].start;
    for (std::size_t p = 0; p < np_; ++p)
      atx[p] = rtx[p].start;

    const double s = kTwoPi * pp.tau;
    cxd tau_rot = std::polar(1.0, s * f0_); // conj of exp(-j 2 pi f tau)
    const cxd tau_step = std::polar(1.0, s * df_);

    cxd acc{0.0, 0.0};
    for (std::size_t k = 0; k < nf_; ++k) {
      cxd k_acc{0.0, 0.0};
      for (std::size_t q = 0; q < nq_; ++q) {
        cxd q_acc{0.0, 0.0};
        const cxd *row = &data[idx(k, q, 0)];
        for (std::size_t p = 0; p < np_; ++p)
          q_acc += row[p] * atx[p];
        k_acc += q_acc * arx[q];
      }
      acc += k_acc * tau_rot;
      for (std::size_t q = 0; q < nq_; ++q)
        arx[q] *= rrx[q].step;
      for (std::size_t p = 0; p < np_; ++p)
        atx[p] *= rtx[p].step;
      tau_rot *= tau_step;
    }
    return acc;
  }

  cxd ls_amplitude(const std::vector<cxd> &data, const PathParams &pp) const {
    return correlate(data, pp) /
           static_cast<double>(nf_ * nq_ * np_);
  }

  void add_path_signal(std::vector<cxd> &dst, const PathParams &pp,
                       double sign) const {
    const auto drx = element_dots(rx_el_, pp.aaoa, pp.eaoa);
    const auto dtx = element_dots(tx_el_, pp.aaod, pp.eaod);
    for (std::size_t k = 0; k < nf_; ++k) {
      const double f = freq_[k];
      const double kc = kTwoPi * f / kSpeedOfLight;
      const cxd base = pp.alpha * std::polar(1.0, -kTwoPi * f * pp.tau);
      std::vector<cxd> atx(np_);
      for (std::size_t p = 0; p < np_; ++p)
        atx[p] = std::polar(1.0, kc * dtx[p]);
      for (std::size_t q = 0; q < nq_; ++q) {
        const cxd rq = base * std::polar(1.0, kc * drx[q]) * sign;
        cxd *row = &dst[idx(k, q, 0)];
        for (std::size_t p = 0; p < np_; ++p)
          row[p] += rq * atx[p];
      }
    }
  }

  // ---- collapsed 1-D objectives ---------------------------------------

  // w[k] = sum_{q,p} data conj(a_rx a_tx); |sum_k w e^{+j2pi f_k tau}|^2.
  std::vector<cxd> collapse_angles(const std::vector<cxd> &data,
                                   const PathParams &pp) const {
    const auto drx = element_dots(rx_el_, pp.aaoa, pp.eaoa);
    const auto dtx = element_dots(tx_el_, pp.aaod, pp.eaod);
    std::vector<cxd> w(nf_, cxd{0, 0});
    for (std::size_t k = 0; k < nf_; ++k) {
      const double kc = kTwoPi * freq_[k] / kSpeedOfLight;
      std::vector<cxd> atx(np_);
      for (std::size_t p = 0; p < np_; ++p)
        atx[p] = std::polar(1.0, -kc * dtx[p]);
      cxd acc{0, 0};
      for (std::size_t q = 0; q < nq_; ++q) {
        cxd q_acc{0, 0};
        const cxd *row = &data[idx(k, q, 0)];
        for (std::size_t p = 0; p < np_; ++p)
          q_acc += row[p] * atx[p];
        acc += q_acc * std::polar(1.0, -kc * drx[q]);
      }
      w[k] = acc;
    }
    return w;
  }

  double delay_objective(const std::vector<cxd> &w, double tau) const {
    const double s = kTwoPi * tau;
    cxd rot = std::polar(1.0, s * f0_);
    const cxd step = std::polar(1.0, s * df_);
    cxd acc{0, 0};
    for (std::size_t k = 0; k < nf_; ++k) {
      acc += w[k] * rot;
      rot *= step;
    }
    return std::norm(acc);
  }

  // u[k][q] = e^{+j2pi f_k tau} sum_p data conj(a_tx); arrival objective
  // |sum_{k,q} u conj(a_rx)|^2.
  std::vector<cxd> collapse_tx_delay(const std::vector<cxd> &data,
                                     const PathParams &pp) const {
    const auto dtx = element_dots(tx_el_, pp.aaod, pp.eaod);
    std::vector<cxd> u(nf_ * nq_);
    for (std::size_t k = 0; k < nf_; ++k) {
      const double f = freq_[k];
      const double kc = kTwoPi * f / kSpeedOfLight;
      const cxd tau_rot = std::polar(1.0, kTwoPi * f * pp.tau);
      std::vector<cxd> atx(np_);
      for (std::size_t p = 0; p < np_; ++p)
        atx[p] = std::polar(1.0, -kc * dtx[p]);
      for (std::size_t q = 0; q < nq_; ++q) {
        cxd acc{0, 0};
        const cxd *row = &data[idx(k, q, 0)];
        for (std::size_t p = 0; p < np_; ++p)
          acc += row[p] * atx[p];
        u[k * nq_ + q] = acc * tau_rot;
      }
    }
    return u;
  }

  double arrival_objective(const std::vector<cxd> &u, double az,
                           double el) const {
    const auto drx = element_dots(rx_el_, az, el);
    std::vector<Rotor> rot;
    rot.reserve(nq_);
    for (double d : drx)
      rot.emplace_back(f0_, df_, d); // conj of steering
    std::vector<cxd> cur(nq_);
    for (std::size_t q = 0; q < nq_; ++q)
      cur[q] = rot[q].start;
    cxd acc{0, 0};
    for (std::size_t k = 0; k < nf_; ++k) {
      for (std::size_t q = 0; q < nq_; ++q) {
        acc += u[k * nq_ + q] * cur[q];
        cur[q] *= rot[q].step;
      }
    }
    return std::norm(acc);
  }

  // Noncoherent (per-p) arrival statistic used before AoD is known.
  double arrival_objective_noncoh(const std::vector<cxd> &y, double tau,
                                  double az, double el) const {
    const auto drx = element_dots(rx_el_, az, el);
    std::vector<Rotor> rot;
    rot.reserve(nq_);
    for (double d : drx)
      rot.emplace_back(f0_, df_, d);
    std::vector<cxd> cur(nq_);
    for (std::size_t q = 0; q < nq_; ++q)
      cur[q] = rot[q].start;
    const double s = kTwoPi * tau;
    cxd tau_rot = std::polar(1.0, s * f0_);
    const cxd tau_step = std::polar(1.0, s * df_);
    std::vector<cxd> per_p(np_, cxd{0, 0});
    for (std::size_t k = 0; k < nf_; ++k) {
      for (std::size_t q = 0; q < nq_; ++q) {
        const cxd wq = cur[q] * tau_rot;
        const cxd *row = &y[idx(k, q, 0)];
        for (std::size_t p = 0; p < np_; ++p)
          per_p[p] += row[p] * wq;
        cur[q] *= rot[q].step;
      }
      tau_rot *= tau_step;
    }
    double acc = 0.0;
    for (const cxd &v : per_p)
      acc += std::norm(v);
    return acc;
  }

  // v[k][p] = e^{+j2pi f_k tau} sum_q data conj(a_rx); departure objective.
  std::vector<cxd> collapse_rx_delay(const std::vector<cxd> &data,
                                     const PathParams &pp) const {
    const auto drx = element_dots(rx_el_, pp.aaoa, pp.eaoa);
    std::vector<cxd> v(nf_ * np_, cxd{0, 0});
    for (std::size_t k = 0; k < nf_; ++k) {
      const double f = freq_[k];
      const double kc = kTwoPi * f / kSpeedOfLight;
      const cxd tau_rot = std::polar(1.0, kTwoPi * f * pp.tau);
      for (std::size_t q = 0; q < nq_; ++q) {
        const cxd wq = std::polar(1.0, -kc * drx[q]) * tau_rot;
        const cxd *row = &data[idx(k, q, 0)];
        for (std::size_t p = 0; p < np_; ++p)
          v[k * np_ + p] += row[p] * wq;
      }
    }
    return v;
  }

  double departure_objective(const std::vector<cxd> &v, double az,
                             double el) const {
    const auto dtx = element_dots(tx_el_, az, el);
    std::vector<Rotor> rot;
    rot.reserve(np_);
    for (double d : dtx)
      rot.emplace_back(f0_, df_, d);
    std::vector<cxd> cur(np_);
    for (std::size_t p = 0; p < np_; ++p)
      cur[p] = rot[p].start;
    cxd acc{0, 0};
    for (std::size_t k = 0; k < nf_; ++k) {
      for (std::size_t p = 0; p < np_; ++p) {
        acc += v[k * np_ + p] * cur[p];
        cur[p] *= rot[p].step;
      }
    }
    return std::norm(acc);
  }

  // Noncoherent delay profile over all element pairs.
  double delay_profile_noncoh(const std::vector<cxd> &data,
                              double tau) const {
    const double s = kTwoPi * tau;
    const cxd step = std::polar(1.0, s * df_);
    double total = 0.0;
    for (std::size_t q = 0; q < nq_; ++q)
      for (std::size_t p = 0; p < np_; ++p) {
        cxd rot = std::polar(1.0, s * f0_);
        cxd acc{0, 0};
        for (std::size_t k = 0; k < nf_; ++k) {
          acc += data[idx(k, q, p)] * rot;
          rot *= step;
        }
        total += std::norm(acc);
      }
    return total;
  }

  // ---- coordinate searches ---------------------------------------------

  double search_1d(const std::function<double(double)> &f, double lo,
                   double hi, double step, double current) const {
    double best_x = current;
    double best_f = f(current);
    for (double g : grid_points(lo, hi, step)) {
      const double v = f(g);
      if (v > best_f + 1e-15 * best_f) {
        best_f = v;
        best_x = g;
      }
    }
    const double a = std::max(lo, best_x - step);
    const double b = std::min(hi, best_x + step);
    if (b > a) {
      const double refined = golden_max(f, a, b);
      if (f(refined) >= best_f)
        best_x = refined;
    }
    return best_x;
  }

  void refine_one(PathParams &pp, const std::vector<cxd> &data) const {
    { // delay
      const auto w = collapse_angles(data, pp);
      pp.tau = search_1d(
          [&](double t) { return delay_objective(w, t); }, cfg_.delay_min_s,
          delay_hi_, cfg_.delay_grid_s, pp.tau);
    }
    { // arrival azimuth / elevation
      const auto u = collapse_tx_delay(data, pp);
      pp.aaoa = search_1d(
          [&](double a) { return arrival_objective(u, a, pp.eaoa); },
          cfg_.az_min_rad, cfg_.az_max_rad, cfg_.angle_grid_rad, pp.aaoa);
      if (!el_fixed_arr_)
        pp.eaoa = search_1d(
            [&](double e) { return arrival_objective(u, pp.aaoa, e); },
            cfg_.el_min_rad, cfg_.el_max_rad, cfg_.angle_grid_rad, pp.eaoa);
    }
    { // departure azimuth / elevation
      const auto v = collapse_rx_delay(data, pp);
      pp.aaod = search_1d(
          [&](double a) { return departure_objective(v, a, pp.eaod); },
          cfg_.az_min_rad, cfg_.az_max_rad, cfg_.angle_grid_rad, pp.aaod);
      if (!el_fixed_dep_)
        pp.eaod = search_1d(
            [&](double e) { return departure_objective(v, pp.aaod, e); },
            cfg_.el_min_rad, cfg_.el_max_rad, cfg_.angle_grid_rad, pp.eaod);
    }
    pp.alpha = ls_amplitude(data, pp);
  }

  double threshold_db(double strongest_db) const {
    double thr = strongest_db - cfg_.dynamic_range_db;
    if (std::isfinite(cfg_.noise_power_db))
      thr = std::max(thr, cfg_.noise_power_db + 3.0);
    else if (!std::isfinite(thr))
      thr = -std::numeric_limits<double>::infinity();
    return thr;
  }

  void detect_paths(SageResult &res) {
    while (paths_.size() < cfg_.max_paths) {
      PathParams pp;
      pp.eaoa = el_fixed_arr_ ? cfg_.el_min_rad
                              : 0.5 * (cfg_.el_min_rad + cfg_.el_max_rad);
      pp.eaod = pp.eaoa;

      // delay first (noncoherent across pairs), then angles
      pp.tau = search_1d(
          [&](double t) { return delay_profile_noncoh(residual_, t); },
          cfg_.delay_min_s, delay_hi_, cfg_.delay_grid_s, cfg_.delay_min_s);
      pp.aaoa = search_1d(
          [&](double a) {
            return arrival_objective_noncoh(residual_, pp.tau, a, pp.eaoa);
          },
          cfg_.az_min_rad, cfg_.az_max_rad, cfg_.angle_grid_rad,
          0.5 * (cfg_.az_min_rad + cfg_.az_max_rad));
      if (!el_fixed_arr_)
        pp.eaoa = search_1d(
            [&](double e) {
              return arrival_objective_noncoh(residual_, pp.tau, pp.aaoa, e);
            },
            cfg_.el_min_rad, cfg_.el_max_rad, cfg_.angle_grid_rad, pp.eaoa);
      {
        const auto v = collapse_rx_delay(residual_, pp);
        pp.aaod = search_1d(
            [&](double a) { return departure_objective(v, a, pp.eaod); },
            cfg_.az_min_rad, cfg_.az_max_rad, cfg_.angle_grid_rad,
            0.5 * (cfg_.az_min_rad + cfg_.az_max_rad));
        if (!el_fixed_dep_)
          pp.eaod = search_1d(
              [&](double e) { return departure_objective(v, pp.aaod, e); },
              cfg_.el_min_rad, cfg_.el_max_rad, cfg_.angle_grid_rad, pp.eaod);
      }
      refine_one(pp, residual_);

      if (std::norm(pp.alpha) <= 0.0)
        break;
      double strongest = pp.power_db();
      for (const PathParams &existing : paths_)
        strongest = std::max(strongest, existing.power_db());
      if (pp.power_db() < threshold_db(strongest))
        break;

      add_path_signal(residual_, pp, -1.0);
      paths_.push_back(pp);
      res.residual_history_db.push_back(residual_power_db());
    }
  }

  void refine_paths(SageResult &res) {
    if (paths_.empty()) {
      res.converged = true;
      return;
    }
    double prev = db_to_linear(residual_power_db());
    std::vector<cxd> x_l(residual_.size());
    for (std::size_t it = 0; it < cfg_.max_iter; ++it) {
      for (PathParams &pp : paths_) {
        x_l = residual_;
        add_path_signal(x_l, pp, +1.0); // expectation: re-add this path
        PathParams updated = pp;
        refine_one(updated, x_l);
        // keep whichever explains x_l better; both cost one projection
        const double before = std::norm(correlate(x_l, pp));
        const double after = std::norm(correlate(x_l, updated));
        if (after >= before)
          pp = updated;
        else
          pp.alpha = ls_amplitude(x_l, pp);
        residual_ = x_l;
        add_path_signal(residual_, pp, -1.0);
      }
      res.iterations = it + 1;
      const double cur_db = residual_power_db();
      res.residual_history_db.push_back(cur_db);
      const double cur = std::isfinite(cur_db) ? db_to_linear(cur_db) : 0.0;
      if (prev <= 0.0 || std::abs(prev - cur) / prev < cfg_.conv_tol) {
        res.converged = true;
        break;
      }
      prev = cur;
    }
  }

  void prune_and_sort(SageResult &res) {
    double strongest = -std::numeric_limits<double>::infinity();
    for (const PathParams &pp : paths_)
      strongest = std::max(strongest, pp.power_db());
    const double thr = threshold_db(strongest);

    for (const PathParams &pp : paths_) {
      if (pp.power_db() < thr)
        continue;
      Mpc m;
      m.amplitude = pp.alpha;
      m.delay_s = std::max(0.0, pp.tau);
      m.aaoa_rad = wrap_angle(pp.aaoa);
      m.aaod_rad = wrap_angle(pp.aaod);
      m.eaoa_rad = std::clamp(pp.eaoa, -kPi / 2, kPi / 2);
      m.eaod_rad = std::clamp(pp.eaod, -kPi / 2, kPi / 2);
      res.mpcs.push_back(m);
    }
    std::sort(res.mpcs.begin(), res.mpcs.end(), [](const Mpc &a, const Mpc &b) {
      return std::abs(a.amplitude) > std::abs(b.amplitude);
    });
  }

  std::vector<cxd> x_;
  std::vector<double> freq_;
  std::vector<Vec3> rx_el_, tx_el_;
  SageConfig cfg_;
  std::size_t nf_, nq_, np_;
  double f0_ = 0.0, df_ = 0.0;
  double delay_hi_ = 0.0;
  bool el_fixed_arr_ = false, el_fixed_dep_ = false;
  std::vector<cxd> residual_;
  std::vector<PathParams> paths_;
};

// Coherent snapshot average of one spatial window, flattened to [k][q][p].
std::vector<cxd> window_data(const ChannelTensor &t, std::size_t q0,
                             std::size_t nq, std::size_t p0, std::size_t np) {
  std::vector<cxd> out(t.n_freq() * nq * np, cxd{0, 0});
  const double scale = 1.0 / static_cast<double>(t.n_snapshots());
  for (std::size_t j = 0; j < t.n_snapshots(); ++j)
    for (std::size_t k = 0; k < t.n_freq(); ++k)
      for (std::size_t q = 0; q < nq; ++q)
        for (std::size_t p = 0; p < np; ++p)
          out[(k * nq + q) * np + p] += t.at(j, k, q0 + q, p0 + p) * scale;
  return out;
}

struct Cluster {
  std::vector<Mpc> members;
  std::vector<double> weights;
};

Mpc merge_cluster(const Cluster &c) {
  double wsum = 0.0, pow_acc = 0.0, tau = 0.0, eaoa = 0.0, eaod = 0.0;
  cxd aoa_vec{0, 0}, aod_vec{0, 0};
  double best_w = -1.0;
  cxd best_alpha{0, 0};
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    const Mpc &m = c.members[i];
    const double w = c.weights[i] * std::norm(m.amplitude);
    wsum += w;
    pow_acc += c.weights[i] * std::norm(m.amplitude);
    tau += w * m.delay_s;
    eaoa += w * m.eaoa_rad;
    eaod += w * m.eaod_rad;
    aoa_vec += w * std::polar(1.0, m.aaoa_rad);
    aod_vec += w * std::polar(1.0, m.aaod_rad);
    if (w > best_w) {
      best_w = w;
      best_alpha = m.amplitude;
    }
  }
  double wtot = 0.0;
  for (double w : c.weights)
    wtot += w;
  Mpc out;
  out.delay_s = tau / wsum;
  out.aaoa_rad = std::arg(aoa_vec);
  out.aaod_rad = std::arg(aod_vec);
  out.eaoa_rad = eaoa / wsum;
  out.eaod_rad = eaod / wsum;
  // window-average power; phase taken from the strongest window
  out.amplitude = std::polar(std::sqrt(pow_acc / wtot), std::arg(best_alpha));
  return out;
}

} // namespace

std::vector<std::size_t> window_offsets(std::size_t n, std::size_t w) {
  if (w == 0 || w > n)
    throw ConfigError("window must be in [1, array size]");
  std::vector<std::size_t> offs;
  for (std::size_t o = 0; o + w <= n; o += w)
    offs.push_back(o);
  if (offs.empty() || offs.back() + w < n)
    offs.push_back(n - w); // flush final window, may overlap
  return offs;
}

std::vector<SubTensor> subarray_partition(const ChannelTensor &tensor,
                                          std::size_t window_rx,
                                          std::size_t window_tx) {
  const auto rx_offs = window_offsets(tensor.n_rx(), window_rx);
  const auto tx_offs = window_offsets(tensor.n_tx(), window_tx);
  std::vector<SubTensor> out;
  out.reserve(rx_offs.size() * tx_offs.size());
  for (std::size_t ro : rx_offs)
    for (std::size_t to : tx_offs) {
      SubTensor st;
      st.tensor = tensor.spatial_window(ro, window_rx, to, window_tx);
      st.rx_offset = ro;
      st.tx_offset = to;
      out.push_back(st);
    }
  return out;
}

SageResult sage_estimate(const ChannelTensor &tensor,
                         const ArrayGeometry &tx_geometry,
                         const ArrayGeometry &rx_geometry,
                         const SageConfig &config) {
  if (tensor.n_rx() != rx_geometry.size() ||
      tensor.n_tx() != tx_geometry.size())
    throw std::invalid_argument("tensor dimensions do not match geometries");
  if (config.window_rx > tensor.n_rx() || config.window_tx > tensor.n_tx())
    throw ConfigError("SAGE window exceeds the array size");
  if (config.window_rx == 0 || config.window_tx == 0)
    throw ConfigError("SAGE window must be nonzero");
  if (tensor.n_freq() < 2)
    throw std::invalid_argument("SAGE needs at least two frequency bins");

  const auto rx_offs = window_offsets(tensor.n_rx(), config.window_rx);
  const auto tx_offs = window_offsets(tensor.n_tx(), config.window_tx);

  std::vector<SageResult> window_results;
  for (std::size_t ro : rx_offs)
    for (std::size_t to : tx_offs) {
      std::vector<Vec3> rx_el(
          rx_geometry.elements.begin() + static_cast<std::ptrdiff_t>(ro),
          rx_geometry.elements.begin() +
              static_cast<std::ptrdiff_t>(ro + config.window_rx));
      std::vector<Vec3> tx_el(
          tx_geometry.elements.begin() + static_cast<std::ptrdiff_t>(to),
          tx_geometry.elements.begin() +
              static_cast<std::ptrdiff_t>(to + config.window_tx));
      WindowEstimator est(
          window_data(tensor, ro, config.window_rx, to, config.window_tx),
          tensor.freq_axis_hz(), std::move(rx_el), std::move(tx_el), config);
      window_results.push_back(est.run());
    }

  if (window_results.size() == 1)
    return window_results.front();

  // Cluster per-window estimates within the (delay, arrival-azimuth) gates
  // and fuse each cluster into one global MPC.
  SageResult merged;
  std::vector<std::pair<Mpc, double>> all; // (mpc, window weight)
  for (const SageResult &wr : window_results) {
    for (const Mpc &m : wr.mpcs)
      all.emplace_back(m, 1.0);
    merged.iterations = std::max(merged.iterations, wr.iterations);
  }
  merged.converged = std::all_of(window_results.begin(), window_results.end(),
                                 [](const SageResult &r) { return r.converged; });
  std::sort(all.begin(), all.end(), [](const auto &a, const auto &b) {
    return std::abs(a.first.amplitude) > std::abs(b.first.amplitude);
  });

  std::vector<Cluster> clusters;
  for (const auto &[m, w] : all) {
    bool placed = false;
    for (Cluster &c : clusters) {
      const Mpc &ref = c.members.front();
      if (std::abs(m.delay_s - ref.delay_s) <= config.merge_delay_gate_s &&
          angle_distance(m.aaoa_rad, ref.aaoa_rad) <=
              config.merge_angle_gate_rad) {
        c.members.push_back(m);
        c.weights.push_back(w);
        placed = true;
        break;
      }
    }
    if (!placed)
      clusters.push_back(Cluster{{m}, {w}});
  }
  for (const Cluster &c : clusters)
    merged.mpcs.push_back(merge_cluster(c));

  double strongest = -std::numeric_limits<double>::infinity();
  for (const Mpc &m : merged.mpcs)
    strongest = std::max(strongest, m.power_db());
  double thr = strongest - config.dynamic_range_db;
  if (std::isfinite(config.noise_power_db))
    thr = std::max(thr, config.noise_power_db + 3.0);
  std::erase_if(merged.mpcs,
                [&](const Mpc &m) { return m.power_db() < thr; });
  std::sort(merged.mpcs.begin(), merged.mpcs.end(),
            [](const Mpc &a, const Mpc &b) {
              return std::abs(a.amplitude) > std::abs(b.amplitude);
            });

  // Energy-weighted residual level across windows.
  double racc = 0.0;
  for (const SageResult &wr : window_results)
    racc += std::isfinite(wr.residual_power_db)
                ? db_to_linear(wr.residual_power_db)
                : 0.0;
  merged.residual_power_db =
      racc > 0.0 ? linear_to_db(racc / static_cast<double>(window_results.size()))
                 : -std::numeric_limits<double>::infinity();
  return merged;
}

} // namespace umic
