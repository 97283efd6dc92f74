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

#include "percldp/exact_dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "percldp/analytics.hpp"
#include "percldp/binomial.hpp"
#include "percldp/error.hpp"
#include "percldp/numeric.hpp"

namespace percldp {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Alive mass is renormalised once it drops below this, with the scale kept
// in log space so survival probabilities far below DBL_MIN stay usable.
constexpr double kRescaleBelow = 1e-120;
// Transition rows keep every term above this fraction of the modal term.
// Rare survival paths are built from far pmf tails, so the cutoff sits near
// the bottom of the double range.
constexpr double kPmfCutoff = 1e-300;

}  // namespace

double SurvivalTable::log_survival_at(std::int64_t t) const {
  if (t <= 0) return 0.0;
  if (t >= static_cast<std::int64_t>(log_survival.size())) {
    throw DomainError("survival queried beyond horizon + 1 (t = " + std::to_string(t) + ")");
  }
  return log_survival[t];
}

double SurvivalTable::survival(std::int64_t t) const { return std::exp(log_survival_at(t)); }

std::int64_t truncated_cap(const ChainParams& params, double c) {
  if (!(c > 0.0)) throw DomainError("cap multiplier must be positive");
  const std::int64_t pool = params.model.n - params.a;
  const double t_c = critical_scales(params.model).t_c;
  const double cap = std::ceil(c * t_c);
  if (cap >= static_cast<double>(pool)) return pool;
  return static_cast<std::int64_t>(cap);
}

SurvivalTable exact_distribution(const ChainParams& params, std::optional<std::int64_t> cap_opt) {
  const std::int64_t a = params.a;
  const std::int64_t pool = params.model.n - a;
  const std::int64_t horizon = params.horizon;
  const double p = params.model.p;
  const int r = params.model.r;

  std::int64_t cap = cap_opt ? *cap_opt : truncated_cap(params, kDefaultCapMultiplier);
  if (cap < 0) throw DomainError("cap must be non-negative");
  cap = std::min(cap, pool);
  const double states = static_cast<double>(horizon) * static_cast<double>(cap + 1);
  if (states > static_cast<double>(kMaxDpStates)) {
    const std::int64_t suggested = std::max<std::int64_t>(0, kMaxDpStates / std::max<std::int64_t>(horizon, 1) - 1);
    throw GuardError("exact DP state space " + std::to_string(static_cast<long long>(states)) +
                     " exceeds " + std::to_string(kMaxDpStates) +
                     "; reduce the horizon or use cap <= " + std::to_string(suggested));
  }

  SurvivalTable table;
  table.params = params;
  table.cap = cap;
  table.dist.assign(horizon + 1, 0.0);
  table.log_survival.assign(horizon + 2, kNegInf);
  table.log_survival[0] = 0.0;

  if (a == 0) {
    table.dist[0] = 1.0;
    return table;
  }

  std::vector<double> cur(cap + 1, 0.0);
  std::vector<double> next(cap + 1, 0.0);
  cur[0] = 1.0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  double log_scale = 0.0;
  CompensatedSum folded;
  CompensatedSum truncated;
  PmfWindow window;

  for (std::int64_t t = 1; t <= horizon; ++t) {
    CompensatedSum before;
    for (std::int64_t s = lo; s <= hi; ++s) before.add(cur[s]);
    const double alive = before.value();
    table.log_survival[t] = alive > 0.0 ? std::log(alive) + log_scale : kNegInf;
    if (!(alive > 0.0)) break;

    if (alive < kRescaleBelow) {
      const double inv = 1.0 / alive;
      for (std::int64_t s = lo; s <= hi; ++s) cur[s] *= inv;
      log_scale += std::log(alive);
    }
    const double scale = std::exp(log_scale);

    const double q = activation_hazard(t, p, r);
    std::int64_t new_lo = cap + 1;
    std::int64_t new_hi = -1;
    double step_folded = 0.0;
    double step_truncated = 0.0;
    double step_in = 0.0;
    for (std::int64_t s = lo; s <= hi; ++s) {
      const double mass = cur[s];
      if (mass == 0.0) continue;
      step_in += mass;
      fill_binomial_pmf_window(pool - s, q, kPmfCutoff, window);
      step_truncated += mass * window.dropped;
      for (std::size_t k = 0; k < window.probs.size(); ++k) {
        const std::int64_t target = s + window.first + static_cast<std::int64_t>(k);
        const double w = mass * window.probs[k];
        if (target > cap) {
          step_folded += w;
          continue;
        }
        next[target] += w;
        new_lo = std::min(new_lo, target);
        new_hi = std::max(new_hi, target);
      }
    }
    for (std::int64_t s = lo; s <= hi; ++s) cur[s] = 0.0;

    double absorbed = 0.0;
    const std::int64_t stop_state = t - a;  // S(t) + a = t
    if (stop_state >= 0 && stop_state <= cap && stop_state >= new_lo && stop_state <= new_hi) {
      absorbed = next[stop_state];
      next[stop_state] = 0.0;
    }
    table.dist[t] = absorbed * scale;
    folded.add(step_folded * scale);
    truncated.add(step_truncated * scale);

    CompensatedSum after;
    after.add(absorbed);
    after.add(step_folded);
    after.add(step_truncated);
    for (std::int64_t s = std::max<std::int64_t>(new_lo, 0); s <= new_hi; ++s) after.add(next[s]);
    if (step_in > 0.0) {
      table.max_step_imbalance =
          std::max(table.max_step_imbalance, std::abs(after.value() - step_in) / step_in);
    }

    // Only S(t) >= t - a + 1 can still be alive.
    lo = std::max(new_lo, stop_state + 1);
    hi = new_hi;
    std::swap(cur, next);
    if (lo > hi) {
      lo = 0;
      hi = -1;
    }
  }

  CompensatedSum final_alive;
  for (std::int64_t s = lo; s <= hi; ++s) final_alive.add(cur[s]);
  const double alive_end = final_alive.value();
  table.log_survival[horizon + 1] = alive_end > 0.0 ? std::log(alive_end) + log_scale : kNegInf;
  table.mass_alive_at_horizon = alive_end * std::exp(log_scale);
  table.mass_folded = folded.value();
  table.mass_truncated = truncated.value();
  table.mass_censored = table.mass_alive_at_horizon + table.mass_folded;
  return table;
}

std::int64_t initial_size_for(double alpha, const ModelParams& model) {
  if (!(alpha >= 0.0)) throw DomainError("alpha must be non-negative");
  if (alpha == 0.0) return model.r;
  const double a_c = critical_scales(model).a_c;
  return std::min<std::int64_t>(model.n, std::llround(alpha * a_c));
}

std::vector<ExponentPoint> empirical_exponent(double alpha, double beta,
                                              const std::vector<ModelParams>& models,
                                              double cap_multiplier) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  std::vector<ExponentPoint> out;
  out.reserve(models.size());
  for (const auto& model : models) {
    ExponentPoint pt;
    pt.model = model;
    pt.t_c = critical_scales(model).t_c;
    pt.a = initial_size_for(alpha, model);
    pt.t = std::min<std::int64_t>(model.n, std::llround(beta * pt.t_c));
    if (alpha < 1.0) {
      pt.xi = beta > phi(alpha, model.r) ? rate_xi(alpha, beta, model.r).xi : 0.0;
    } else {
      pt.xi = std::numeric_limits<double>::quiet_NaN();
    }
    if (pt.t <= pt.a) {
      pt.log_survival = 0.0;
    } else {
      const ChainParams params(model, pt.a, pt.t);
      const SurvivalTable table =
          exact_distribution(params, truncated_cap(params, cap_multiplier));
      pt.log_survival = table.log_survival_at(pt.t);
    }
    pt.exponent = pt.log_survival / pt.t_c;
    out.push_back(pt);
  }
  return out;
}

}  // namespace percldp
