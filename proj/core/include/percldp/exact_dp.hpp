// Copyright 2026 The percldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "percldp/chain.hpp"

namespace percldp {

// Largest horizon x (cap + 1) product exact_distribution will allocate.
inline constexpr std::int64_t kMaxDpStates = 100'000'000;

// Exact law of |A*| = t_star for the binomial chain, truncated at S <= cap.
struct SurvivalTable {
  ChainParams params;
  std::int64_t cap = 0;

  // dist[k] = P(|A*| = k), k = 0..horizon.
  std::vector<double> dist;
  // log_survival[t] = log P(|A*| >= t), t = 0..horizon + 1. Mass folded
  // above the cap is excluded, so these are lower bounds.
  std::vector<double> log_survival;

  double mass_alive_at_horizon = 0.0;  // survived every step up to horizon
  double mass_folded = 0.0;            // S exceeded the cap while alive
  double mass_truncated = 0.0;         // pmf tails below the cutoff
  double mass_censored = 0.0;          // alive_at_horizon + folded
  double max_step_imbalance = 0.0;     // worst per-step conservation error

  // P(|A*| >= t); 1 for t <= a, 0 beyond horizon + 1.
  double survival(std::int64_t t) const;
  double log_survival_at(std::int64_t t) const;
};

// ceil(c t_c), clipped to n - a. c must be positive.
std::int64_t truncated_cap(const ChainParams& params, double c);

// Forward DP over (t, S(t)) with the chain's thinned binomial transitions,
// absorbing at S(t) + a = t. Throws GuardError when horizon * (cap + 1)
// exceeds kMaxDpStates.
SurvivalTable exact_distribution(const ChainParams& params,
                                 std::optional<std::int64_t> cap = std::nullopt);

struct ExponentPoint {
  ModelParams model;
  double t_c = 0.0;
  std::int64_t a = 0;
  std::int64_t t = 0;
  double log_survival = 0.0;
  double exponent = 0.0;  // log P(a, t) / t_c
  double xi = 0.0;        // limiting rate
};

// Initial size used for a given alpha: round(alpha a_c), or r when alpha = 0
// (smaller sets cannot activate anything).
std::int64_t initial_size_for(double alpha, const ModelParams& model);

// For each model runs exact_distribution with a = initial_size_for(alpha),
// t = round(beta t_c) and horizon t, and reports t_c^{-1} log P(a, t).
// xi is 0 when beta <= phi(alpha) and NaN for alpha >= 1.
std::vector<ExponentPoint> empirical_exponent(double alpha, double beta,
                                              const std::vector<ModelParams>& models,
                                              double cap_multiplier = kDefaultCapMultiplier);

}  // namespace percldp
