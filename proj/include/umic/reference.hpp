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

#include "umic/scenario.hpp"

namespace umic {

// Reference parameter sets for the 15 GHz UMi scenario suite. These drive
// the synthetic scenario generators and are echoed in reports for
// side-by-side comparison.

struct CiRef {
  double ple;
  double sigma_db;
  double d_min_m, d_max_m;
};

struct FiRef {
  double alpha_db;
  double beta;
  double sigma_db;
};

inline constexpr CiRef kCiNfLos{1.98, 1.69, 21.0, 42.0};
inline constexpr CiRef kCiFfLos{1.89, 2.23, 73.0, 222.0};
inline constexpr FiRef kFiNfLos{58.35, 1.81, 1.69};
inline constexpr FiRef kFiFfLos{62.5, 1.58, 2.19};

// Fitted vegetation excess-loss sets (A, B, C) per scenario.
struct VegRef {
  double a, b, c;
  double sigma_db;
  double depth_min_m, depth_max_m;
};

inline constexpr VegRef kVegNfOutFit{25.457, -0.286, 1.246, 2.12, 0.5, 3.0};
inline constexpr VegRef kVegNfInFit{16.385, -0.241, 1.247, 2.12, 0.5, 3.0};
inline constexpr VegRef kVegFfOutFit{32.259, -0.088, 0.055, 0.95, 3.0, 12.0};
inline constexpr VegRef kVegFfInFit{17.387, -0.022, 0.047, 0.95, 3.0, 12.0};

// Lognormal delay/angular spread summaries (log10 seconds / log10 degrees).
struct SpreadRef {
  double ds_mu, ds_sigma;
  double asa_mu, asa_sigma;
  double asd_mu, asd_sigma;
  double esd_mu, esd_sigma;
};

inline constexpr SpreadRef kSpreadNfLos{-8.50, 0.32, 0.87, 0.24,
                                        0.69,  0.31, 0.53, 0.32};
inline constexpr SpreadRef kSpreadFfLos{-8.89, 1.75, 0.06, 2.10,
                                        0.31,  2.16, -0.99, 2.70};
inline constexpr SpreadRef kSpreadNfFoliage{-8.41, 0.36, 0.83, 0.63,
                                            0.87,  0.65, 0.68, 0.27};
inline constexpr SpreadRef kSpreadFfFoliage{-7.48, 0.23, 1.69, 0.07,
                                            0.72,  2.56, 1.23, 0.24};

// 3GPP TR 38.901 UMi LoS reference column; no foliage figures are
// standardized there.
inline constexpr SpreadRef kSpread3gppUmiLos{-7.43, 0.38, 1.63, 0.30,
                                             1.15,  0.41, 0.54, 0.35};

// Capacity distribution fits at rho = 10 dB, 64 x 128.
struct CapacityNormalRef {
  double mu, sigma;
};
struct CapacityGmmRef {
  double w1, mu1, sigma1;
  double w2, mu2, sigma2;
};

inline constexpr CapacityGmmRef kCapNfLos{0.367, 145.0, 9.8,
                                          0.633, 124.0, 3.56};
inline constexpr CapacityGmmRef kCapFfFoliage{0.405, 189.0, 0.123,
                                              0.595, 190.0, 0.055};
inline constexpr CapacityNormalRef kCapNfFoliage{169.7, 18.68};
inline constexpr CapacityNormalRef kCapFfLos{181.8, 4.47};
inline constexpr CapacityNormalRef kCapIidRayleigh{200.0, 0.987};

const SpreadRef &spread_ref(ScenarioClass c);

} // namespace umic
