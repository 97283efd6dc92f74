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
#include <vector>

#include "percldp/random.hpp"

namespace percldp {

// pi(t) = P(Bin(t, p) >= r), the probability that a vertex has collected r
// marks after t used vertices.
double pi_at(std::int64_t t, double p, int r);

// 1 - pi(t) = P(Bin(t, p) <= r - 1), summed directly.
double pi_complement(std::int64_t t, double p, int r);

// pi(t) - pi(t-1) = p * P(Bin(t-1, p) = r - 1): the r-th mark arrives at
// step t. Zero for t < r.
double pi_increment(std::int64_t t, double p, int r);

// Per-step activation hazard for a vertex still inactive after t-1 steps:
// (pi(t) - pi(t-1)) / (1 - pi(t-1)).
double activation_hazard(std::int64_t t, double p, int r);

// Binomial pmf over the window [first, first + probs.size()) holding all
// terms down to `rel_cutoff` times the modal term.
struct PmfWindow {
  std::int64_t first = 0;
  std::vector<double> probs;
  double dropped = 0.0;  // 1 - sum(probs), clipped at zero
};

PmfWindow binomial_pmf_window(std::int64_t trials, double q, double rel_cutoff = 1e-18);
// Same, reusing the storage of `out`.
void fill_binomial_pmf_window(std::int64_t trials, double q, double rel_cutoff, PmfWindow& out);

// Exact Bin(trials, q) draw: sequential inversion for small means,
// std::binomial_distribution otherwise.
std::int64_t sample_binomial(std::int64_t trials, double q, Rng& rng);

}  // namespace percldp
