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

#include <span>
#include <vector>

#include "percldp/analytics.hpp"

namespace percldp {

enum class EndpointMode { Free, Fixed };

// Discrete trajectory problem on x_i = i beta / m: f_0 = alpha gamma_r,
// non-decreasing, f_i >= x_i, and f_m either free in [beta, cap] or fixed.
struct TrajectoryProblem {
  double alpha = 0.0;
  double beta = 1.0;
  int r = 2;
  int m = 256;
  double cap = 3.0;
  EndpointMode endpoint = EndpointMode::Free;
  double fixed_end = 0.0;  // used when endpoint == Fixed
};

void validate_problem(const TrajectoryProblem& problem);

// Per-cell sigma_i = w log(e s^{r-1} / w) - s^{r-1}, w = Delta f_i / Delta x_i,
// with s = x_i, except s = x_1 for the first cell (x_0 = 0). Zero slopes
// contribute -s^{r-1}.
struct SigmaEvaluation {
  std::vector<double> sigma;
  double total = 0.0;  // sum sigma_i Delta x_i
};

// Requires an evenly spaced grid and non-decreasing values.
SigmaEvaluation sigma_total(const Trajectory& traj, int r);

// sigma_w = log(s^{r-1} / w) per cell (the -1 constant of the derivative
// cancels in deviations), reported as deviation from the mean over
// included cells. Cells with w <= 0 are flagged and excluded.
struct ElResidual {
  std::vector<double> deviation;  // NaN for excluded cells
  std::vector<bool> flagged;      // non-positive slope
  std::vector<bool> included;
  double mean = 0.0;
  double max_abs = 0.0;
  std::size_t count = 0;
};

// `mask`, when non-empty, restricts the cells considered (size m).
ElResidual el_residual(const Trajectory& traj, int r, std::span<const char> mask = {});

enum class LatticeSearch {
  MonotoneSplit,  // divide and conquer on the monotone argmax, O(m K log K)
  Exhaustive,     // full scan, O(m K^2)
};

struct OptimizerResult {
  Trajectory lattice;       // exact argmax over the value lattice
  Trajectory refined;       // exact argmax over real-valued sequences
  double lattice_objective = 0.0;
  double refined_objective = 0.0;
  double resolution = 0.0;  // lattice spacing
};

// Maximizes sum sigma_i Delta x_i over non-decreasing sequences with the
// problem's constraints. `levels` lattice steps span [alpha gamma_r, cap].
OptimizerResult maximize_trajectory(const TrajectoryProblem& problem, int levels = 2000,
                                    LatticeSearch search = LatticeSearch::MonotoneSplit);

// Number of lattice steps so that the spacing over [alpha gamma_r, cap] is
// at most `resolution`.
int lattice_levels(const TrajectoryProblem& problem, double resolution);

// Indices with |f_i - x_i| <= tol.
std::vector<int> diagonal_contact(const Trajectory& traj, double tol);
bool is_contiguous(const std::vector<int>& indices);

struct ClaimCheck {
  double alpha = 0.0;
  double beta = 0.0;
  double knob = 0.0;    // beta', c_1 or alpha' depending on the claim
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
};

struct ClaimSummary {
  std::vector<ClaimCheck> checks;
  double min_margin = 0.0;
  bool all_strict = true;
};

// The three comparisons behind the optimality of f*:
//   coincide: I(f, b', b) < I(x, b', b) for f = c2 (x^r - b'^r) + b'
//   touch:    I(f, 0, b) < I(f*, 0, b) for f = c1 x^r + alpha gamma_r
//   contact:  I(f, 0, a') + I(x, a', eta) < I(f*, 0, eta), eta = min(alpha, beta)
struct DiagonalClaimsReport {
  int r = 2;
  ClaimSummary coincide;
  ClaimSummary touch;
  ClaimSummary contact;
  bool all_strict() const { return coincide.all_strict && touch.all_strict && contact.all_strict; }
};

DiagonalClaimsReport verify_diagonal_claims(int r, std::span<const double> alpha_grid,
                                            std::span<const double> beta_grid);

// Individual claim sides, exposed for direct checks.
double claim_coincide_margin(double beta_prime, double beta, double c2, int r);
double claim_touch_margin(double alpha, double beta, double c1, int r);
double claim_contact_margin(double alpha, double beta, double alpha_prime, int r);

}  // namespace percldp
