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

#include "umic/newchar.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "umic/rng.hpp"

namespace umic {

namespace {

// Least-squares polynomial fit (degree <= 2) via normal equations; returns
// the RMS of the residuals.
double poly_fit_rmse(std::span<const double> x, std::span<const double> y,
                     int degree) {
  const std::size_t n = x.size();
  const int m = degree + 1;
  double a[3][4] = {};
  for (std::size_t i = 0; i < n; ++i) {
    double xp[3] = {1.0, x[i], x[i] * x[i]};
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c)
        a[r][c] += xp[r] * xp[c];
      a[r][m] += xp[r] * y[i];
    }
  }
  // Gaussian elimination with partial pivoting on the m x (m+1) system.
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col]))
        piv = r;
    std::swap(a[piv], a[col]);
    if (std::abs(a[col][col]) < 1e-300)
      throw std::invalid_argument("degenerate polynomial fit");
    for (int r = 0; r < m; ++r) {
      if (r == col)
        continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c <= m; ++c)
        a[r][c] -= f * a[col][c];
    }
  }
  double coef[3] = {};
  for (int r = 0; r < m; ++r)
    coef[r] = a[r][m] / a[r][r];

  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double fit = coef[0] + coef[1] * x[i] + coef[2] * x[i] * x[i];
    acc += (y[i] - fit) * (y[i] - fit);
  }
  return std::sqrt(acc / static_cast<double>(n));
}

} // namespace

std::vector<double> unwrap_phase(std::span<const double> phase_rad) {
  std::vector<double> out(phase_rad.begin(), phase_rad.end());
  for (std::size_t i = 1; i < out.size(); ++i) {
    double d = out[i] - out[i - 1];
    d = wrap_angle(d);
    out[i] = out[i - 1] + d;
  }
  return out;
}

ApertureTrendFit fit_aperture_trends(const AperturePathTrace &trace) {
  const std::size_t n = trace.element_index.size();
  if (n < 3 || trace.power_db.size() != n || trace.phase_rad.size() != n)
    throw std::invalid_argument("trace needs >= 3 matched samples");
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(trace.phase_rad[i] - trace.phase_rad[i - 1]) >= kPi)
      throw std::invalid_argument("phase trace is not unwrapped");

  ApertureTrendFit f;
  double mu = 0.0;
  for (double p : trace.power_db)
    mu += p;
  mu /= static_cast<double>(n);
  double var = 0.0;
  for (double p : trace.power_db)
    var += (p - mu) * (p - mu);
  f.power_std_db = std::sqrt(var / static_cast<double>(n));

  f.power_linfit_rmse_db =
      poly_fit_rmse(trace.element_index, trace.power_db, 1);
  f.phase_linfit_rmse_rad =
      poly_fit_rmse(trace.element_index, trace.phase_rad, 1);
  f.phase_quadfit_rmse_rad =
      poly_fit_rmse(trace.element_index, trace.phase_rad, 2);
  return f;
}

double sccf(std::span<const cxd> h_a, std::span<const cxd> h_b) {
  if (h_a.size() != h_b.size() || h_a.empty())
    throw std::invalid_argument("vectors must be nonempty and equal length");
  cxd inner{0.0, 0.0};
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < h_a.size(); ++i) {
    inner += h_a[i] * std::conj(h_b[i]);
    na += std::norm(h_a[i]);
    nb += std::norm(h_b[i]);
  }
  if (na <= 0.0 || nb <= 0.0)
    throw std::invalid_argument("correlation undefined for a zero vector");
  return std::min(1.0, std::abs(inner) / std::sqrt(na * nb));
}

double cscf(const ChannelTensor &tensor, RxPairing pairing) {
  const std::size_t nq = tensor.n_rx();
  if (nq < 2)
    throw std::invalid_argument("need at least two receive elements");

  std::vector<cxd> va(tensor.n_freq()), vb(tensor.n_freq());
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t j = 0; j < tensor.n_snapshots(); ++j)
    for (std::size_t p = 0; p < tensor.n_tx(); ++p) {
      auto branch = [&](std::size_t q, std::vector<cxd> &v) {
        for (std::size_t k = 0; k < tensor.n_freq(); ++k)
          v[k] = tensor.at(j, k, q, p);
      };
      if (pairing == RxPairing::kAdjacentRx) {
        for (std::size_t q = 0; q + 1 < nq; ++q) {
          branch(q, va);
          branch(q + 1, vb);
          acc += sccf(va, vb);
          ++count;
        }
      } else {
        for (std::size_t q = 0; q < nq; ++q) {
          branch(q, va);
          for (std::size_t q2 = q + 1; q2 < nq; ++q2) {
            branch(q2, vb);
            acc += sccf(va, vb);
            ++count;
          }
        }
      }
    }
  return acc / static_cast<double>(count);
}

void HardeningEnsemble::validate() const {
  if (tensors.size() < 2)
    throw std::invalid_argument("hardening ensemble needs M >= 2 points");
  const ChannelTensor &ref = tensors.front();
  for (const ChannelTensor &t : tensors)
    if (t.n_freq() != ref.n_freq() || t.n_rx() != ref.n_rx() ||
        t.n_tx() != ref.n_tx())
      throw std::invalid_argument("ensemble tensors must share dimensions");
}

namespace {

double chd_impl(const HardeningEnsemble &ensemble,
                const std::vector<std::size_t> &rx_rows) {
  ensemble.validate();
  const std::size_t M = ensemble.tensors.size();
  const std::size_t nf = ensemble.tensors.front().n_freq();

  // Per point: energy normalization alpha_m, then the subset gain per
  // frequency. Snapshots are folded into the frequency average.
  std::vector<std::vector<double>> gain(M, std::vector<double>(nf, 0.0));
  for (std::size_t m = 0; m < M; ++m) {
    const ChannelTensor &t = ensemble.tensors[m];
    double alpha = 0.0;
    for (std::size_t j = 0; j < t.n_snapshots(); ++j)
      for (std::size_t k = 0; k < nf; ++k)
        for (std::size_t q = 0; q < t.n_rx(); ++q)
          for (std::size_t p = 0; p < t.n_tx(); ++p)
            alpha += std::norm(t.at(j, k, q, p));
    alpha /= static_cast<double>(t.n_snapshots() * nf);
    if (alpha <= 0.0)
      throw std::invalid_argument("zero-energy ensemble point " +
                                  std::to_string(m));
    for (std::size_t k = 0; k < nf; ++k) {
      double g = 0.0;
      for (std::size_t j = 0; j < t.n_snapshots(); ++j)
        for (std::size_t q : rx_rows)
          for (std::size_t p = 0; p < t.n_tx(); ++p)
            g += std::norm(t.at(j, k, q, p));
      gain[m][k] = g / (alpha * static_cast<double>(t.n_snapshots()));
    }
  }

  std::vector<double> per_freq(nf);
  for (std::size_t k = 0; k < nf; ++k) {
    double mean = 0.0;
    for (std::size_t m = 0; m < M; ++m)
      mean += gain[m][k];
    mean /= static_cast<double>(M);
    double var = 0.0;
    for (std::size_t m = 0; m < M; ++m)
      var += (gain[m][k] - mean) * (gain[m][k] - mean);
    var /= static_cast<double>(M);
    if (mean <= 0.0)
      throw std::invalid_argument("zero mean gain at a frequency point");
    per_freq[k] = var / (mean * mean);
  }

  std::sort(per_freq.begin(), per_freq.end());
  const std::size_t mid = nf / 2;
  return (nf % 2 == 1) ? per_freq[mid]
                       : 0.5 * (per_freq[mid - 1] + per_freq[mid]);
}

} // namespace

double chd(const HardeningEnsemble &ensemble, std::size_t n_rx) {
  ensemble.validate();
  if (n_rx == 0 || n_rx > ensemble.tensors.front().n_rx())
    throw std::invalid_argument("receive subset size out of range");
  std::vector<std::size_t> rows(n_rx);
  std::iota(rows.begin(), rows.end(), 0);
  return chd_impl(ensemble, rows);
}

double chd_random_subset(const HardeningEnsemble &ensemble, std::size_t n_rx,
                         std::uint64_t seed) {
  ensemble.validate();
  const std::size_t nq = ensemble.tensors.front().n_rx();
  if (n_rx == 0 || n_rx > nq)
    throw std::invalid_argument("receive subset size out of range");
  std::vector<std::size_t> rows(nq);
  std::iota(rows.begin(), rows.end(), 0);
  Rng rng(seed);
  for (std::size_t i = nq - 1; i > 0; --i) {
    const std::size_t j =
        static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1));
    std::swap(rows[i], rows[std::min(j, i)]);
  }
  rows.resize(n_rx);
  return chd_impl(ensemble, rows);
}

} // namespace umic
