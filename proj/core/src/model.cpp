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

#include "percldp/model.hpp"

#include <cmath>
#include <string>

#include "percldp/error.hpp"
#include "percldp/numeric.hpp"

namespace percldp {

ModelParams::ModelParams(std::int64_t n_, double p_, int r_) : n(n_), p(p_), r(r_) {
  if (r < 2) throw DomainError("r must be at least 2, got " + std::to_string(r));
  if (n < r + 1) {
    throw DomainError("n must be at least r + 1, got n = " + std::to_string(n));
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("p must lie in (0, 1), got " + std::to_string(p));
  }
}

CriticalScales critical_scales(const ModelParams& params) {
  const int r = params.r;
  const double log_tc = (log_factorial(r - 1) - std::log(static_cast<double>(params.n)) -
                         r * std::log(params.p)) /
                        (r - 1);
  CriticalScales out;
  out.gamma_r = gamma_r(r);
  out.t_c = std::exp(log_tc);
  out.a_c = out.gamma_r * out.t_c;
  return out;
}

RegimeDiagnostics check_regime(const ModelParams& params) {
  const double n = static_cast<double>(params.n);
  const int r = params.r;
  RegimeDiagnostics d;
  d.np = n * params.p;
  d.log_n_pow = std::pow(std::log(n), r - 1);
  d.n_pow_gamma = std::pow(n, gamma_r(r));
  d.lower_ratio = d.np / d.log_n_pow;
  d.upper_ratio = d.n_pow_gamma / d.np;
  d.p_t_c = params.p * critical_scales(params).t_c;
  d.lower_ok = d.lower_ratio > 1.0;
  d.upper_ok = d.upper_ratio > 1.0;
  d.in_regime = d.lower_ok && d.upper_ok;
  return d;
}

double p_for_critical_time(std::int64_t n, int r, double t_c) {
  if (r < 2) throw DomainError("r must be at least 2");
  if (n <= 0 || !(t_c > 0.0)) throw DomainError("n and t_c must be positive");
  const double log_p = (log_factorial(r - 1) - std::log(static_cast<double>(n)) -
                        (r - 1) * std::log(t_c)) /
                       r;
  return std::exp(log_p);
}

}  // namespace percldp
