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

#include "percldp/extremal.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "percldp/error.hpp"
#include "percldp/exact_dp.hpp"
#include "percldp/numeric.hpp"

namespace percldp {

ContagiousBoundReport corollary_bound(int r, double n, double vartheta, double delta) {
  if (r < 2) throw DomainError("r must be at least 2");
  if (!(vartheta > 1.0 && vartheta < n)) throw DomainError("vartheta must satisfy 1 < vartheta < n");
  if (!(delta >= 0.0 && delta < 1.0)) throw DomainError("delta must lie in [0, 1)");
  ContagiousBoundReport out;
  out.r = r;
  out.n = n;
  out.vartheta = vartheta;
  out.delta = delta;
  const double g = gamma_r(r);
  out.p = std::exp(g * std::log(g * g / vartheta) + (log_factorial(r - 1) - std::log(n)) / r);
  out.t_c = vartheta / (g * g);
  out.bound = r * vartheta / std::log(n / vartheta);
  out.t_delta = (1.0 - delta) * out.bound;
  if (!(out.t_delta < n)) throw DomainError("t_delta must be below n");
  out.nu = 1.0 - (1.0 - delta) * std::log(n * std::exp(1.0) / out.t_delta) / std::log(n / vartheta);
  return out;
}

FirstMomentReport first_moment(int r, double n, double vartheta, double delta,
                               double cap_multiplier) {
  FirstMomentReport out;
  out.bound = corollary_bound(r, n, vartheta, delta);
  if (n != std::floor(n) || n > 9.0e15) throw DomainError("n must be an integer");
  const auto n_int = static_cast<std::int64_t>(n);
  const ModelParams model(n_int, out.bound.p, r);
  out.k = static_cast<std::int64_t>(std::floor(out.bound.t_delta));
  out.t = std::llround(critical_scales(model).t_c);
  if (out.k < 1) throw DomainError("t_delta is below one; no subsets to count");
  if (out.t > n_int) throw DomainError("critical time exceeds n");
  out.log_choose = log_choose(n_int, out.k);
  if (out.t <= out.k) {
    out.log_probability = 0.0;
  } else {
    const ChainParams params(model, out.k, out.t);
    const SurvivalTable table =
        exact_distribution(params, truncated_cap(params, cap_multiplier));
    out.log_probability = table.log_survival_at(out.t);
    out.censored_mass = table.mass_censored;
  }
  out.log_expected = out.log_choose + out.log_probability;
  const double td = out.bound.t_delta;
  out.log_analytic_bound = td * std::log(n * std::exp(1.0) / td) - r * vartheta;
  return out;
}

bool is_contagious(const Graph& graph, std::span<const Vertex> initial, int r) {
  std::vector<int> marks;
  std::vector<Vertex> queue;
  return closure_size(graph, initial, r, marks, queue) == graph.num_vertices();
}

ContagiousSearch min_contagious_bruteforce(const Graph& graph, int r, std::int64_t size_limit) {
  if (r < 1) throw DomainError("r must be positive");
  if (size_limit < 0) throw DomainError("size limit must be non-negative");
  const std::int64_t n = graph.num_vertices();
  const std::int64_t top = std::min(size_limit, n);
  double total = 0.0;
  for (std::int64_t k = 0; k <= top; ++k) total += std::exp(log_choose(n, k));
  if (total > kMaxBruteForceSubsets * (1.0 + 1e-9)) {
    throw GuardError("subset enumeration of about " + std::to_string(total) +
                     " sets exceeds the limit of 1e8");
  }

  ContagiousSearch out;
  std::vector<int> marks;
  std::vector<Vertex> queue;
  std::vector<Vertex> subset;
  for (std::int64_t k = 0; k <= top; ++k) {
    subset.resize(static_cast<std::size_t>(k));
    std::iota(subset.begin(), subset.end(), Vertex{0});
    while (true) {
      ++out.subsets_examined;
      if (closure_size(graph, subset, r, marks, queue) == n) {
        out.size = k;
        out.witness = subset;
        return out;
      }
      // Next combination in lexicographic order.
      std::int64_t i = k - 1;
      while (i >= 0 && subset[i] == static_cast<Vertex>(n - k + i)) --i;
      if (i < 0) break;
      ++subset[i];
      for (std::int64_t j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace percldp
