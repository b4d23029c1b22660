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

#include <cstdint>
#include <span>
#include <vector>

#include "umic/tensor.hpp"

namespace umic {

// Capacity samples per (snapshot, frequency) pair plus their mean, the
// paper-style scalar capacity of the tensor.
struct CapacitySamples {
  std::vector<double> values; // bit/s/Hz, index j * n_freq + k
  double snr_db = 0.0;
  std::size_t n_rx = 0, n_tx = 0;

  double mean() const;
  double stddev() const; // population
};

// log2 det(I + rho/N_tx H^ H^H) per (j, k) with the Frobenius
// normalization H^ = H / sqrt(||H||_F^2 / (N_rx N_tx)). Evaluated through
// the Hermitian eigenvalues for numerical stability.
CapacitySamples capacity(const ChannelTensor &tensor, double snr_db);

// Right-continuous empirical CDF: sorted (value, k/N) pairs.
std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> samples);

struct DistFit {
  enum class Kind { kNormal, kGmm2 };
  Kind kind = Kind::kNormal;

  // normal
  double mu = 0.0, sigma = 0.0;
  // two-component mixture, ordered by ascending mean, w1 + w2 = 1
  double w1 = 0.0, mu1 = 0.0, sigma1 = 0.0;
  double w2 = 0.0, mu2 = 0.0, sigma2 = 0.0;

  double log_likelihood = 0.0;
  double bic = 0.0;
  bool converged = true;
  bool degenerate = false;
  std::vector<double> ll_history; // per EM iteration, non-decreasing

  double mean() const {
    return kind == Kind::kNormal ? mu : w1 * mu1 + w2 * mu2;
  }
};

// Gaussian fit by sample moments (population sigma); zero variance sets
// the degenerate flag.
DistFit fit_normal(std::span<const double> samples);

// 1-D two-component Gaussian mixture via EM, initialized from the median
// split. Component collapse triggers a jittered restart (at most 5);
// non-convergence returns the best iterate with converged = false.
DistFit fit_gmm2(std::span<const double> samples, std::size_t max_iter = 200,
                 double tol = 1e-8, std::uint64_t seed = 1);

} // namespace umic
