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

namespace percldp {

// The (n, p, r) triple every computation lives in. Construction validates
// n >= r + 1, 0 < p < 1 and r >= 2.
struct ModelParams {
  std::int64_t n = 0;
  double p = 0.0;
  int r = 2;

  ModelParams() = default;
  ModelParams(std::int64_t n, double p, int r);
};

struct CriticalScales {
  double gamma_r = 0.0;  // 1 - 1/r
  double t_c = 0.0;      // ((r-1)! / (n p^r))^(1/(r-1))
  double a_c = 0.0;      // gamma_r * t_c
};

// Finite-n diagnostics for the window log^{r-1} n << np << n^{gamma_r}.
// Purely informational; the flags are ratio > 1 tests.
struct RegimeDiagnostics {
  double np = 0.0;
  double log_n_pow = 0.0;    // log^{r-1} n
  double n_pow_gamma = 0.0;  // n^{gamma_r}
  double lower_ratio = 0.0;  // np / log^{r-1} n
  double upper_ratio = 0.0;  // n^{gamma_r} / np
  double p_t_c = 0.0;        // p * t_c, small in the intended regime
  bool lower_ok = false;
  bool upper_ok = false;
  bool in_regime = false;
};

inline double gamma_r(int r) { return 1.0 - 1.0 / r; }

CriticalScales critical_scales(const ModelParams& params);

RegimeDiagnostics check_regime(const ModelParams& params);

// Edge probability giving critical time t_c at size n:
// p = ((r-1)! / (n t_c^{r-1}))^{1/r}.
double p_for_critical_time(std::int64_t n, int r, double t_c);

}  // namespace percldp
