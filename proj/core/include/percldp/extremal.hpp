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

#include "percldp/graph.hpp"

namespace percldp {

// Lower-bound calculator for minimal contagious sets of G(n, p) with
// p = (gamma_r^2 / vartheta)^{gamma_r} ((r-1)! / n)^{1/r}.
struct ContagiousBoundReport {
  int r = 2;
  double n = 0.0;
  double vartheta = 0.0;
  double delta = 0.0;
  double p = 0.0;
  double t_c = 0.0;       // vartheta / gamma_r^2
  double bound = 0.0;     // r vartheta / log(n / vartheta)
  double t_delta = 0.0;   // (1 - delta) * bound
  double nu = 0.0;        // 1 - (1 - delta) log(n e / t_delta) / log(n / vartheta)
  double o1_term = 0.0;   // asymptotic correction, not evaluated at finite n
};

// Requires r >= 2, 1 < vartheta < n and 0 <= delta < 1.
ContagiousBoundReport corollary_bound(int r, double n, double vartheta, double delta);

struct FirstMomentReport {
  ContagiousBoundReport bound;
  std::int64_t k = 0;           // floor(t_delta), the subset size counted
  std::int64_t t = 0;           // round(t_c)
  double log_choose = 0.0;      // log C(n, k)
  double log_probability = 0.0; // log P(|A*| >= t) from exact_distribution
  double log_expected = 0.0;    // log_choose + log_probability
  double log_analytic_bound = 0.0; // t_delta log(n e / t_delta) - r vartheta
  double censored_mass = 0.0;   // DP mass beyond the truncation cap
};

// Expected number of k-sets whose closure reaches t_c, on the log scale.
// Requires an integral n. Exact DP guard failures propagate.
FirstMomentReport first_moment(int r, double n, double vartheta, double delta,
                               double cap_multiplier = 3.0);

inline constexpr double kMaxBruteForceSubsets = 1e8;

struct ContagiousSearch {
  std::optional<std::int64_t> size;  // empty when no set within the limit works
  std::vector<Vertex> witness;
  std::int64_t subsets_examined = 0;
};

bool is_contagious(const Graph& graph, std::span<const Vertex> initial, int r);

// Smallest contagious set by exhaustive search over sizes 0..size_limit in
// lexicographic order. Throws GuardError when the number of subsets to
// enumerate exceeds kMaxBruteForceSubsets.
ContagiousSearch min_contagious_bruteforce(const Graph& graph, int r, std::int64_t size_limit);

}  // namespace percldp
