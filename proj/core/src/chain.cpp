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

#include "percldp/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "percldp/binomial.hpp"
#include "percldp/error.hpp"
#include "percldp/parallel.hpp"

namespace percldp {

ChainParams::ChainParams(const ModelParams& model_, std::int64_t a_, std::int64_t horizon_)
    : model(model_), a(a_), horizon(horizon_) {
  if (a < 0 || a > model.n) {
    throw DomainError("initial size a must lie in [0, n], got " + std::to_string(a));
  }
  if (horizon < a || horizon > model.n) {
    throw DomainError("horizon must lie in [a, n], got " + std::to_string(horizon));
  }
}

std::int64_t default_horizon(const ModelParams& model, std::int64_t a, double cap_multiplier) {
  const double t_c = critical_scales(model).t_c;
  const double h = std::ceil(cap_multiplier * t_c) + static_cast<double>(a);
  return std::min<std::int64_t>(model.n, static_cast<std::int64_t>(std::min(h, 9e18)));
}

ChainParams make_chain_params(const ModelParams& model, std::int64_t a,
                              std::optional<std::int64_t> horizon, double cap_multiplier) {
  return ChainParams(model, a, horizon ? *horizon : default_horizon(model, a, cap_multiplier));
}

ChainSimulator::ChainSimulator(const ChainParams& params) : params_(params) {
  hazard_.assign(params_.horizon + 1, 0.0);
  for (std::int64_t t = 1; t <= params_.horizon; ++t) {
    hazard_[t] = activation_hazard(t, params_.model.p, params_.model.r);
  }
}

StoppingTime ChainSimulator::stopping_time(Rng& rng) const {
  const std::int64_t a = params_.a;
  const std::int64_t pool = params_.model.n - a;
  if (a == 0) return {0, false};
  std::int64_t s = 0;
  for (std::int64_t t = 1; t <= params_.horizon; ++t) {
    s += sample_binomial(pool - s, hazard_[t], rng);
    if (s + a == t) return {t, false};
  }
  return {params_.horizon, true};
}

ChainTrace ChainSimulator::trace(Rng& rng) const {
  const std::int64_t a = params_.a;
  const std::int64_t pool = params_.model.n - a;
  ChainTrace out;
  out.s_values.push_back(0);
  if (a == 0) return out;
  std::int64_t s = 0;
  for (std::int64_t t = 1; t <= params_.horizon; ++t) {
    s += sample_binomial(pool - s, hazard_[t], rng);
    out.s_values.push_back(s);
    if (s + a == t) {
      out.t_star = t;
      return out;
    }
  }
  out.t_star = params_.horizon;
  out.censored = true;
  return out;
}

std::vector<std::int64_t> ChainSimulator::free_path(Rng& rng, std::int64_t t_end) const {
  if (t_end < 0 || t_end > params_.horizon) {
    throw DomainError("free_path end must lie in [0, horizon]");
  }
  const std::int64_t pool = params_.model.n - params_.a;
  std::vector<std::int64_t> s_values(t_end + 1, 0);
  std::int64_t s = 0;
  for (std::int64_t t = 1; t <= t_end; ++t) {
    s += sample_binomial(pool - s, hazard_[t], rng);
    s_values[t] = s;
  }
  return s_values;
}

ChainTrace simulate_chain(const ChainParams& params, std::uint64_t seed) {
  Rng rng(seed);
  return ChainSimulator(params).trace(rng);
}

std::vector<StoppingTime> stopping_times(const ChainParams& params, std::int64_t runs,
                                         std::uint64_t seed, unsigned threads) {
  if (runs < 1) throw DomainError("runs must be at least 1");
  const ChainSimulator sim(params);
  std::vector<StoppingTime> out(runs);
  parallel_for(runs, threads, [&](std::int64_t i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    out[i] = sim.stopping_time(rng);
  });
  return out;
}

SurvivalEstimate survival_mc(const ChainParams& params, std::int64_t t_target,
                             std::int64_t runs, std::uint64_t seed, unsigned threads) {
  if (t_target < 0) throw DomainError("t_target must be non-negative");
  ChainParams run_params = params;
  if (t_target > run_params.horizon) {
    run_params = ChainParams(params.model, params.a, std::min(t_target, params.model.n));
  }
  const auto times = stopping_times(run_params, runs, seed, threads);
  std::int64_t hits = 0;
  for (const auto& st : times) {
    if (st.censored || st.t_star >= t_target) ++hits;
  }
  SurvivalEstimate out;
  out.runs = runs;
  out.hits = hits;
  out.t_target = t_target;
  out.seed = seed;
  out.p_hat = static_cast<double>(hits) / runs;
  out.std_error = std::sqrt(out.p_hat * (1.0 - out.p_hat) / runs);
  return out;
}

FinalSizeMoments final_size_moments(const ChainParams& params, std::int64_t runs,
                                    std::uint64_t seed, unsigned threads) {
  return summarize_stopping_times(stopping_times(params, runs, seed, threads));
}

FinalSizeMoments summarize_stopping_times(std::span<const StoppingTime> times) {
  FinalSizeMoments out;
  out.runs = static_cast<std::int64_t>(times.size());
  double sum = 0.0;
  for (const auto& st : times) {
    if (st.censored) {
      ++out.censored_runs;
      continue;
    }
    ++out.used_runs;
    sum += static_cast<double>(st.t_star);
  }
  if (out.used_runs == 0) return out;
  const double n = static_cast<double>(out.used_runs);
  out.mean = sum / n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (const auto& st : times) {
    if (st.censored) continue;
    const double d = static_cast<double>(st.t_star) - out.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  out.variance = out.used_runs > 1 ? m2 / (n - 1.0) : 0.0;
  out.mean_stderr = std::sqrt(out.variance / n);
  const double mu2 = m2 / n;
  const double mu4 = m4 / n;
  out.variance_stderr = std::sqrt(std::max(0.0, mu4 - mu2 * mu2) / n);
  return out;
}

}  // namespace percldp
