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

#include "percldp/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "percldp/error.hpp"
#include "percldp/numeric.hpp"

namespace percldp {

namespace {

constexpr double kLogSqrt2Pi = 0.918938533204672741780329736406;

// log(k!) - log(sqrt(2 pi k) (k/e)^k).
double stirling_error(double k) {
  if (k <= 15.0) {
    return std::lgamma(k + 1.0) - (k + 0.5) * std::log(k) + k - kLogSqrt2Pi;
  }
  constexpr double s0 = 1.0 / 12;
  constexpr double s1 = 1.0 / 360;
  constexpr double s2 = 1.0 / 1260;
  constexpr double s3 = 1.0 / 1680;
  constexpr double s4 = 1.0 / 1188;
  const double kk = k * k;
  return (s0 - (s1 - (s2 - (s3 - s4 / kk) / kk) / kk) / kk) / k;
}

// x log(x / mu) + mu - x without cancellation when x is close to mu.
double deviance(double x, double mu) {
  if (std::abs(x - mu) < 0.1 * (x + mu)) {
    const double v = (x - mu) / (x + mu);
    double sum = (x - mu) * v;
    double term = 2.0 * x * v;
    const double v2 = v * v;
    for (int j = 1; j < 1000; ++j) {
      term *= v2;
      const double next = sum + term / (2 * j + 1);
      if (next == sum) return next;
      sum = next;
    }
    return sum;
  }
  return x * std::log(x / mu) + mu - x;
}

}  // namespace

double log_choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  const std::int64_t kk = std::min(k, n - k);
  if (kk <= 64) {
    double s = 0.0;
    for (std::int64_t j = 0; j < kk; ++j) {
      s += std::log(static_cast<double>(n - j) / static_cast<double>(j + 1));
    }
    return s;
  }
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(kk);
  const double rest = nd - kd;
  return stirling_error(nd) - stirling_error(kd) - stirling_error(rest) +
         0.5 * std::log(nd / (kd * rest)) - kLogSqrt2Pi + kd * std::log(nd / kd) -
         rest * std::log1p(-kd / nd);
}

double binomial_log_pmf(std::int64_t n, std::int64_t k, double p) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  if (p <= 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
  const double nd = static_cast<double>(n);
  const double q = 1.0 - p;
  if (k == 0) return nd * std::log1p(-p);
  if (k == n) return nd * std::log(p);
  const double kd = static_cast<double>(k);
  const double rest = nd - kd;
  return stirling_error(nd) - stirling_error(kd) - stirling_error(rest) -
         deviance(kd, nd * p) - deviance(rest, nd * q) +
         0.5 * std::log(nd / (kd * rest)) - kLogSqrt2Pi;
}

double pi_complement(std::int64_t t, double p, int r) {
  if (t < r) return 1.0;
  CompensatedSum s;
  for (int k = 0; k < r; ++k) s.add(std::exp(binomial_log_pmf(t, k, p)));
  return std::min(1.0, s.value());
}

double pi_at(std::int64_t t, double p, int r) {
  if (t < 0) throw DomainError("pi_at needs t >= 0");
  if (t < r) return 0.0;
  const double lower = pi_complement(t, p, r);
  if (lower < 0.5) return 1.0 - lower;
  // Upper tail is at most 1/2: sum it directly so tiny values keep full
  // relative precision.
  double term = std::exp(binomial_log_pmf(t, r, p));
  CompensatedSum s;
  s.add(term);
  const double ratio = p / (1.0 - p);
  for (std::int64_t k = r; k < t; ++k) {
    term *= static_cast<double>(t - k) / static_cast<double>(k + 1) * ratio;
    s.add(term);
    if (term < 1e-18 * s.value() && k + 1 > t * p) break;
  }
  return std::min(1.0, s.value());
}

double pi_increment(std::int64_t t, double p, int r) {
  if (t < r) return 0.0;
  return p * std::exp(binomial_log_pmf(t - 1, r - 1, p));
}

double activation_hazard(std::int64_t t, double p, int r) {
  if (t < r) return 0.0;
  const double survivor = pi_complement(t - 1, p, r);
  if (survivor <= 0.0) return 1.0;
  return std::min(1.0, pi_increment(t, p, r) / survivor);
}

void fill_binomial_pmf_window(std::int64_t trials, double q, double rel_cutoff, PmfWindow& out) {
  out.probs.clear();
  out.dropped = 0.0;
  if (trials <= 0 || q <= 0.0) {
    out.first = 0;
    out.probs.push_back(1.0);
    return;
  }
  if (q >= 1.0) {
    out.first = trials;
    out.probs.push_back(1.0);
    return;
  }
  const std::int64_t mode =
      std::min<std::int64_t>(trials, static_cast<std::int64_t>(std::floor((trials + 1) * q)));
  const double odds = q / (1.0 - q);
  // Terms relative to the mode, below the mode first (in descending k).
  double term = 1.0;
  for (std::int64_t k = mode; k > 0; --k) {
    term *= static_cast<double>(k) / (static_cast<double>(trials - k + 1) * odds);
    if (term < rel_cutoff) break;
    out.probs.push_back(term);
  }
  const std::size_t n_below = out.probs.size();
  std::reverse(out.probs.begin(), out.probs.end());
  out.probs.push_back(1.0);
  term = 1.0;
  for (std::int64_t k = mode; k < trials; ++k) {
    term *= static_cast<double>(trials - k) / static_cast<double>(k + 1) * odds;
    if (term < rel_cutoff) break;
    out.probs.push_back(term);
  }
  const double scale = std::exp(binomial_log_pmf(trials, mode, q));
  CompensatedSum total;
  for (double& v : out.probs) {
    v *= scale;
    total.add(v);
  }
  out.first = mode - static_cast<std::int64_t>(n_below);
  out.dropped = std::max(0.0, 1.0 - total.value());
}

PmfWindow binomial_pmf_window(std::int64_t trials, double q, double rel_cutoff) {
  PmfWindow out;
  fill_binomial_pmf_window(trials, q, rel_cutoff, out);
  return out;
}

std::int64_t sample_binomial(std::int64_t trials, double q, Rng& rng) {
  if (trials <= 0 || q <= 0.0) return 0;
  if (q >= 1.0) return trials;
  if (q > 0.5) return trials - sample_binomial(trials, 1.0 - q, rng);
  const double mean = trials * q;
  if (mean < 30.0) {
    const double odds = q / (1.0 - q);
    double prob = std::exp(trials * std::log1p(-q));
    double cdf = prob;
    const double u = rng.uniform();
    std::int64_t k = 0;
    while (u > cdf && k < trials) {
      prob *= static_cast<double>(trials - k) / static_cast<double>(k + 1) * odds;
      ++k;
      cdf += prob;
      if (prob == 0.0) break;
    }
    return k;
  }
  std::binomial_distribution<std::int64_t> dist(trials, q);
  return dist(rng);
}

}  // namespace percldp
