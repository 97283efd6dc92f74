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

#include <cmath>
#include <cstdint>
#include <span>

namespace percldp {

// x*log(x) with the 0*log(0) = 0 convention.
inline double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

// x*log(y) with the 0*log(y) = 0 convention (covers 0^0 = 1 in exponents).
inline double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

// log C(n, k); exact-ish loop for small min(k, n-k), lgamma otherwise.
double log_choose(std::int64_t n, std::int64_t k);

// log P(Bin(n, p) = k). Returns -inf outside the support.
double binomial_log_pmf(std::int64_t n, std::int64_t k, double p);

// log((r-1)!) style helper: log(k!).
inline double log_factorial(std::int64_t k) { return std::lgamma(static_cast<double>(k) + 1.0); }

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

}  // namespace percldp
