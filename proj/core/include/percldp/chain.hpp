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
#include <span>
#include <vector>

#include "percldp/model.hpp"
#include "percldp/random.hpp"

namespace percldp {

// Default cap multiplier C: trajectories are followed up to C t_c.
inline constexpr double kDefaultCapMultiplier = 3.0;

struct ChainParams {
  ModelParams model;
  std::int64_t a = 0;        // initially active vertices
  std::int64_t horizon = 0;  // last step simulated

  ChainParams() = default;
  // Validates 0 <= a <= horizon <= n.
  ChainParams(const ModelParams& model, std::int64_t a, std::int64_t horizon);
};

// min(n, ceil(C t_c) + a).
std::int64_t default_horizon(const ModelParams& model, std::int64_t a,
                             double cap_multiplier = kDefaultCapMultiplier);

ChainParams make_chain_params(const ModelParams& model, std::int64_t a,
                              std::optional<std::int64_t> horizon = std::nullopt,
                              double cap_multiplier = kDefaultCapMultiplier);

// One realization: s_values[t] = S(t) for t = 0..T where T = t_star, or the
// horizon when censored.
struct ChainTrace {
  std::vector<std::int64_t> s_values;
  std::int64_t t_star = 0;
  bool censored = false;
};

struct StoppingTime {
  std::int64_t t_star = 0;
  bool censored = false;
};

// Holds the per-step activation hazards so batches share one table.
// Step t draws Delta S(t) ~ Bin(n - a - S(t-1), hazard(t)), which keeps
// S(t) ~ Bin(n - a, pi(t)) exactly.
class ChainSimulator {
 public:
  explicit ChainSimulator(const ChainParams& params);

  const ChainParams& params() const { return params_; }

  StoppingTime stopping_time(Rng& rng) const;
  ChainTrace trace(Rng& rng) const;

  // Runs the chain without the stopping rule up to t_end (<= horizon).
  std::vector<std::int64_t> free_path(Rng& rng, std::int64_t t_end) const;

 private:
  ChainParams params_;
  std::vector<double> hazard_;  // index t = 1..horizon
};

ChainTrace simulate_chain(const ChainParams& params, std::uint64_t seed);

struct SurvivalEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;
  std::int64_t runs = 0;
  std::int64_t hits = 0;
  std::int64_t t_target = 0;
  std::uint64_t seed = 0;
};

// Fraction of runs with t_star >= t_target. The horizon is raised to
// t_target when needed; censored runs count as survivors.
SurvivalEstimate survival_mc(const ChainParams& params, std::int64_t t_target,
                             std::int64_t runs, std::uint64_t seed, unsigned threads = 0);

struct FinalSizeMoments {
  double mean = 0.0;
  double variance = 0.0;
  double mean_stderr = 0.0;
  double variance_stderr = 0.0;
  std::int64_t runs = 0;
  std::int64_t used_runs = 0;      // uncensored
  std::int64_t censored_runs = 0;  // survived past the horizon
};

// Sample moments of t_star = |A*| over uncensored runs.
FinalSizeMoments final_size_moments(const ChainParams& params, std::int64_t runs,
                                    std::uint64_t seed, unsigned threads = 0);

// All stopping times of a batch, in run order.
std::vector<StoppingTime> stopping_times(const ChainParams& params, std::int64_t runs,
                                         std::uint64_t seed, unsigned threads = 0);

// Moments of the uncensored stopping times in `times`.
FinalSizeMoments summarize_stopping_times(std::span<const StoppingTime> times);

}  // namespace percldp
