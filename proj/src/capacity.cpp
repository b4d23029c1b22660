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

#include "umic/capacity.hpp"

#include <algorithm>
#include <armadillo>
#include <stdexcept>

#include "umic/rng.hpp"

namespace umic {

double CapacitySamples::mean() const {
  double acc = 0.0;
  for (double v : values)
    acc += v;
  return acc / static_cast<double>(values.size());
}

double CapacitySamples::stddev() const {
  const double m = mean();
  double acc = 0.0;
  for (double v : values)
    acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(values.size()));
}

CapacitySamples capacity(const ChannelTensor &tensor, double snr_db) {
  const std::size_t nq = tensor.n_rx(), np = tensor.n_tx();
  const double rho = db_to_linear(snr_db);

  CapacitySamples out;
  out.snr_db = snr_db;
  out.n_rx = nq;
  out.n_tx = np;
  out.values.reserve(tensor.n_snapshots() * tensor.n_freq());

  // Work on the smaller Gram matrix when N_rx > N_tx; the nonzero
  // eigenvalues of H H^H and H^H H coincide.
  const bool use_tx_gram = np < nq;
  arma::cx_mat h(nq, np);
  for (std::size_t j = 0; j < tensor.n_snapshots(); ++j)
    for (std::size_t k = 0; k < tensor.n_freq(); ++k) {
      double energy = 0.0;
      for (std::size_t q = 0; q < nq; ++q)
        for (std::size_t p = 0; p < np; ++p) {
          const cxd v = tensor.at(j, k, q, p);
          h(q, p) = v;
          energy += std::norm(v);
        }
      if (energy <= 0.0)
        throw std::invalid_argument(
            "zero-energy channel matrix at snapshot " + std::to_string(j) +
            ", frequency bin " + std::to_string(k));
      const double p_rs = energy / static_cast<double>(nq * np);

      arma::cx_mat gram = use_tx_gram ? arma::cx_mat(h.t() * h)
                                      : arma::cx_mat(h * h.t());
      arma::vec ev;
      if (!arma::eig_sym(ev, gram))
        throw std::runtime_error("eigendecomposition failed");

      const double scale = rho / (static_cast<double>(np) * p_rs);
      double cap = 0.0;
      for (double lambda : ev)
        cap += std::log2(1.0 + scale * std::max(lambda, 0.0));
      out.values.push_back(cap);
    }
  return out;
}

std::vector<std::pair<double, double>> empirical_cdf(
    std::vector<double> samples) {
  if (samples.empty())
    throw std::invalid_argument("no samples");
  std::sort(samples.begin(), samples.end());
  std::vector<std::pair<double, double>> cdf(samples.size());
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    cdf[i] = {samples[i], static_cast<double>(i + 1) / n};
  return cdf;
}

namespace {

double normal_logpdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return -0.5 * z * z - std::log(sigma) - 0.9189385332046727; // ln sqrt(2pi)
}

double mixture_ll(std::span<const double> x, const DistFit &f) {
  double ll = 0.0;
  for (double v : x) {
    const double l1 =
        f.w1 * std::exp(normal_logpdf(v, f.mu1, f.sigma1));
    const double l2 =
        f.w2 * std::exp(normal_logpdf(v, f.mu2, f.sigma2));
    ll += std::log(std::max(l1 + l2, 1e-300));
  }
  return ll;
}

} // namespace

DistFit fit_normal(std::span<const double> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("need at least two samples");
  DistFit f;
  f.kind = DistFit::Kind::kNormal;
  double mu = 0.0;
  for (double v : samples)
    mu += v;
  mu /= static_cast<double>(samples.size());
  double var = 0.0;
  for (double v : samples)
    var += (v - mu) * (v - mu);
  var /= static_cast<double>(samples.size());
  f.mu = mu;
  f.sigma = std::sqrt(var);
  if (f.sigma <= 0.0) {
    f.degenerate = true;
    f.log_likelihood = std::numeric_limits<double>::infinity();
    f.bic = -std::numeric_limits<double>::infinity();
    return f;
  }
  double ll = 0.0;
  for (double v : samples)
    ll += normal_logpdf(v, f.mu, f.sigma);
  f.log_likelihood = ll;
  f.bic = 2.0 * std::log(static_cast<double>(samples.size())) - 2.0 * ll;
  return f;
}

DistFit fit_gmm2(std::span<const double> samples, std::size_t max_iter,
                 double tol, std::uint64_t seed) {
  const std::size_t n = samples.size();
  if (n < 4)
    throw std::invalid_argument("need at least four samples");

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double range = std::max(sorted.back() - sorted.front(), 1e-12);
  const double sigma_floor = 1e-6 * range;

  auto moments = [](std::span<const double> v) {
    double mu = 0.0;
    for (double x : v)
      mu += x;
    mu /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v)
      var += (x - mu) * (x - mu);
    var /= static_cast<double>(v.size());
    return std::pair<double, double>{mu, std::sqrt(var)};
  };

  Rng rng(seed);
  DistFit best;
  best.kind = DistFit::Kind::kGmm2;
  best.log_likelihood = -std::numeric_limits<double>::infinity();
  best.converged = false;

  for (int restart = 0; restart <= 5; ++restart) {
    DistFit f;
    f.kind = DistFit::Kind::kGmm2;
    { // median-split initialization (jittered on restarts)
      const std::size_t half = n / 2;
      auto [m1, s1] = moments(std::span<const double>(sorted).first(half));
      auto [m2, s2] = moments(std::span<const double>(sorted).subspan(half));
      f.w1 = f.w2 = 0.5;
      f.mu1 = m1;
      f.mu2 = m2;
      f.sigma1 = std::max(s1, sigma_floor);
      f.sigma2 = std::max(s2, sigma_floor);
      if (restart > 0) {
        f.mu1 += rng.normal(0.0, 0.1 * range);
        f.mu2 += rng.normal(0.0, 0.1 * range);
        f.sigma1 = std::max(f.sigma1 * (1.0 + 0.5 * rng.uniform()), sigma_floor);
        f.sigma2 = std::max(f.sigma2 * (1.0 + 0.5 * rng.uniform()), sigma_floor);
      }
    }

    double prev_ll = -std::numeric_limits<double>::infinity();
    bool collapsed = false;
    std::vector<double> r1(n);
    for (std::size_t it = 0; it < max_iter; ++it) {
      // E step
      double n1 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double l1 =
            f.w1 * std::exp(normal_logpdf(samples[i], f.mu1, f.sigma1));
        const double l2 =
            f.w2 * std::exp(normal_logpdf(samples[i], f.mu2, f.sigma2));
        const double denom = std::max(l1 + l2, 1e-300);
        r1[i] = l1 / denom;
        n1 += r1[i];
      }
      const double n2 = static_cast<double>(n) - n1;
      if (n1 < 1e-3 || n2 < 1e-3) {
        collapsed = true; // one component starved; restart with jitter
        break;
      }
      // M step
      double mu1 = 0.0, mu2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        mu1 += r1[i] * samples[i];
        mu2 += (1.0 - r1[i]) * samples[i];
      }
      mu1 /= n1;
      mu2 /= n2;
      double v1 = 0.0, v2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        v1 += r1[i] * (samples[i] - mu1) * (samples[i] - mu1);
        v2 += (1.0 - r1[i]) * (samples[i] - mu2) * (samples[i] - mu2);
      }
      f.w1 = n1 / static_cast<double>(n);
      f.w2 = n2 / static_cast<double>(n);
      f.mu1 = mu1;
      f.mu2 = mu2;
      // Genuine point clusters legitimately drive sigma to the floor; the
      // floor keeps the likelihood finite.
      f.sigma1 = std::max(std::sqrt(v1 / n1), sigma_floor);
      f.sigma2 = std::max(std::sqrt(v2 / n2), sigma_floor);

      const double ll = mixture_ll(samples, f);
      f.ll_history.push_back(ll);
      if (std::isfinite(prev_ll)) {
        const double rel = std::abs(ll - prev_ll) /
                           std::max(1.0, std::abs(prev_ll));
        if (rel < tol) {
          f.converged = true;
          prev_ll = ll;
          break;
        }
      }
      prev_ll = ll;
    }
    if (collapsed)
      continue;

    f.log_likelihood = prev_ll;
    if (f.sigma1 <= sigma_floor || f.sigma2 <= sigma_floor)
      f.degenerate = true;
    if (f.mu1 > f.mu2) { // deterministic component order
      std::swap(f.mu1, f.mu2);
      std::swap(f.sigma1, f.sigma2);
      std::swap(f.w1, f.w2);
    }
    f.bic = 5.0 * std::log(static_cast<double>(n)) - 2.0 * f.log_likelihood;
    const bool better = f.converged != best.converged
                            ? f.converged
                            : f.log_likelihood > best.log_likelihood;
    if (better)
      best = f;
    if (best.converged)
      break;
  }
  return best;
}

} // namespace umic
