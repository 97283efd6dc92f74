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

#include <string_view>
#include <utility>
#include <vector>

#include "percldp/model.hpp"

namespace percldp {

// Typical final size (in units of t_c) from an initial set of size
// alpha * a_c: the root in [0, alpha) of phi - phi^r / r = alpha * gamma_r.
double phi(double alpha, int r);

enum class RateBranch { BelowAlpha, AboveAlpha, ClampedAtOne };

std::string_view to_string(RateBranch branch);

struct RatePoint {
  double alpha = 0.0;
  double beta = 0.0;
  double xi = 0.0;
  RateBranch branch = RateBranch::AboveAlpha;
};

// Large deviations rate xi(alpha, beta) for P(a, t) with a ~ alpha a_c and
// t ~ beta t_c. Requires 0 <= alpha < 1 and beta > phi(alpha). Values of
// beta above 1 are evaluated at beta = 1.
RatePoint rate_xi(double alpha, double beta, int r);

// Samples on a grid x_0 < ... < x_m with values f_i, both in units of t_c.
struct Trajectory {
  std::vector<double> grid;
  std::vector<double> values;

  std::size_t size() const { return grid.size(); }
};

// Throws DomainError unless the grid is strictly increasing and sizes match.
void validate_trajectory(const Trajectory& traj);
bool is_non_decreasing(const Trajectory& traj);
bool satisfies_obstacle(const Trajectory& traj, double slack = 0.0);

// One piece of a closed-form trajectory on [from, to]:
// Power: f(x) = coeff * x^r + offset.  Diagonal: f(x) = x.
struct Segment {
  enum class Kind { Power, Diagonal };
  Kind kind = Kind::Power;
  double from = 0.0;
  double to = 0.0;
  double coeff = 0.0;
  double offset = 0.0;
};

struct PiecewiseTrajectory {
  int r = 2;
  std::vector<Segment> segments;

  double operator()(double x) const;
  double begin() const { return segments.front().from; }
  double end() const { return segments.back().to; }
};

// Closed-form optimal trajectory on [0, beta]:
//   beta <= alpha: (beta - alpha g)(x/beta)^r + alpha g
//   beta >  alpha: x^r / (r alpha^{r-1}) + alpha g on [0, alpha], x after.
// alpha = 0 degenerates to f(x) = x on [0, beta].
PiecewiseTrajectory optimal_descriptor(double alpha, double beta, int r);

// The descriptor sampled on x_i = i beta / m, i = 0..m.
Trajectory optimal_trajectory(double alpha, double beta, int r, int m);

// I(f, s, t) = int_s^t f'(x) log(e x^{r-1} / f'(x)) dx.
// Closed forms per segment for descriptors.
double functional_I(const PiecewiseTrajectory& f, double s, double t);
// Piecewise-linear interpretation of samples (per-cell slope).
double functional_I(const Trajectory& f, double s, double t, int r);

// I(x, u, v) = -(r-2)(v-u) + (r-1) log(v^v / u^u).
double integral_diagonal(double u, double v, int r);
// I(c x^r + c', u, v) = c (v^r - u^r) log(e / (c r)); zero when c = 0.
double integral_power(double coeff, double u, double v, int r);

// I(f*, 0, beta) - beta^r / r, with the same clamping as rate_xi.
double xi_via_integral(double alpha, double beta, int r);

struct CltMoments {
  double mu = 0.0;
  double sigma2 = 0.0;
};

// Subcritical normal approximation of |A*|: mean phi t_c and variance
// (phi^r / r)(1 - phi^{r-1})^{-2} t_c.
CltMoments clt_moments(double alpha, const ModelParams& params);

}  // namespace percldp
