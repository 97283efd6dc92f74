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

#include "percldp/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "percldp/error.hpp"
#include "percldp/numeric.hpp"

namespace percldp {
namespace {

void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in [0, 1), got " + std::to_string(alpha));
  }
}

void require_r(int r) {
  if (r < 2) throw DomainError("r must be at least 2, got " + std::to_string(r));
}

}  // namespace

double phi(double alpha, int r) {
  require_alpha(alpha);
  require_r(r);
  if (alpha == 0.0) return 0.0;
  // g(y) = y - y^r / r is strictly increasing on [0, 1); g(0) = 0 < target
  // and g(alpha) = alpha - alpha^r / r > alpha * gamma_r.
  const double target = alpha * gamma_r(r);
  double lo = 0.0;
  double hi = alpha;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = mid - std::pow(mid, r) / r;
    if (g < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string_view to_string(RateBranch branch) {
  switch (branch) {
    case RateBranch::BelowAlpha:
      return "below_alpha";
    case RateBranch::AboveAlpha:
      return "above_alpha";
    case RateBranch::ClampedAtOne:
      return "clamped_at_one";
  }
  return "unknown";
}

RatePoint rate_xi(double alpha, double beta, int r) {
  require_alpha(alpha);
  require_r(r);
  const double phi_a = phi(alpha, r);
  if (!(beta > phi_a)) {
    throw DomainError("beta must exceed phi(alpha) = " + std::to_string(phi_a) +
                      ", got " + std::to_string(beta));
  }
  RatePoint out{alpha, beta, 0.0, RateBranch::AboveAlpha};
  double b = beta;
  if (beta > 1.0) {
    b = 1.0;
    out.branch = RateBranch::ClampedAtOne;
  } else if (beta < alpha) {
    out.branch = RateBranch::BelowAlpha;
  }
  const double ag = alpha * gamma_r(r);
  const double br = std::pow(b, r);
  if (b < alpha) {
    const double excess = b - ag;
    out.xi = -br / r + excess * (1.0 + std::log(br / (r * excess)));
  } else {
    out.xi = -br / r + alpha / r - (r - 2) * (b - alpha) +
             (r - 1) * (xlogx(b) - xlogy(ag, alpha));
  }
  return out;
}

void validate_trajectory(const Trajectory& traj) {
  if (traj.grid.size() != traj.values.size()) {
    throw DomainError("trajectory grid and values differ in length");
  }
  if (traj.grid.size() < 2) throw DomainError("trajectory needs at least two points");
  for (std::size_t i = 1; i < traj.grid.size(); ++i) {
    if (!(traj.grid[i] > traj.grid[i - 1])) {
      throw DomainError("trajectory grid must be strictly increasing");
    }
  }
}

bool is_non_decreasing(const Trajectory& traj) {
  return std::is_sorted(traj.values.begin(), traj.values.end());
}

bool satisfies_obstacle(const Trajectory& traj, double slack) {
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj.values[i] < traj.grid[i] - slack) return false;
  }
  return true;
}

double PiecewiseTrajectory::operator()(double x) const {
  const Segment* seg = &segments.back();
  for (const auto& s : segments) {
    if (x <= s.to) {
      seg = &s;
      break;
    }
  }
  if (seg->kind == Segment::Kind::Diagonal) return x;
  return seg->coeff * std::pow(x, r) + seg->offset;
}

PiecewiseTrajectory optimal_descriptor(double alpha, double beta, int r) {
  require_alpha(alpha);
  require_r(r);
  const double phi_a = phi(alpha, r);
  if (!(beta > phi_a) || beta > 1.0) {
    throw DomainError("optimal trajectory needs phi(alpha) < beta <= 1, got beta = " +
                      std::to_string(beta));
  }
  const double ag = alpha * gamma_r(r);
  PiecewiseTrajectory f;
  f.r = r;
  using Kind = Segment::Kind;
  if (alpha == 0.0) {
    f.segments.push_back({Kind::Diagonal, 0.0, beta, 0.0, 0.0});
  } else if (beta <= alpha) {
    f.segments.push_back({Kind::Power, 0.0, beta, (beta - ag) / std::pow(beta, r), ag});
  } else {
    const double c = 1.0 / (r * std::pow(alpha, r - 1));
    f.segments.push_back({Kind::Power, 0.0, alpha, c, ag});
    f.segments.push_back({Kind::Diagonal, alpha, beta, 0.0, 0.0});
  }
  return f;
}

Trajectory optimal_trajectory(double alpha, double beta, int r, int m) {
  if (m < 2) throw DomainError("grid size m must be at least 2");
  const PiecewiseTrajectory f = optimal_descriptor(alpha, beta, r);
  Trajectory out;
  out.grid.resize(m + 1);
  out.values.resize(m + 1);
  for (int i = 0; i <= m; ++i) {
    const double x = (i == m) ? beta : i * beta / m;
    out.grid[i] = x;
    out.values[i] = f(x);
  }
  return out;
}

double integral_diagonal(double u, double v, int r) {
  return -(r - 2) * (v - u) + (r - 1) * (xlogx(v) - xlogx(u));
}

double integral_power(double coeff, double u, double v, int r) {
  if (coeff == 0.0) return 0.0;
  return coeff * (std::pow(v, r) - std::pow(u, r)) * (1.0 - std::log(coeff * r));
}

double functional_I(const PiecewiseTrajectory& f, double s, double t) {
  if (s > t) throw DomainError("functional_I needs s <= t");
  if (s < f.begin() - 1e-12 || t > f.end() + 1e-12) {
    throw DomainError("functional_I interval outside the trajectory domain");
  }
  double total = 0.0;
  for (const auto& seg : f.segments) {
    const double u = std::max(s, seg.from);
    const double v = std::min(t, seg.to);
    if (!(v > u)) continue;
    total += seg.kind == Segment::Kind::Diagonal ? integral_diagonal(u, v, f.r)
                                                 : integral_power(seg.coeff, u, v, f.r);
  }
  return total;
}

double functional_I(const Trajectory& f, double s, double t, int r) {
  validate_trajectory(f);
  if (s > t) throw DomainError("functional_I needs s <= t");
  if (s < f.grid.front() - 1e-12 || t > f.grid.back() + 1e-12) {
    throw DomainError("functional_I interval outside the trajectory domain");
  }
  CompensatedSum total;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double x0 = f.grid[i];
    const double x1 = f.grid[i + 1];
    const double u = std::max(s, x0);
    const double v = std::min(t, x1);
    if (!(v > u)) continue;
    const double w = (f.values[i + 1] - f.values[i]) / (x1 - x0);
    if (w < 0.0) throw DomainError("functional_I needs a non-decreasing trajectory");
    if (w == 0.0) continue;
    // int_u^v w (1 - log w + (r-1) log x) dx
    total.add(w * ((v - u) * (1.0 - std::log(w)) +
                   (r - 1) * (xlogx(v) - xlogx(u) - (v - u))));
  }
  return total.value();
}

double xi_via_integral(double alpha, double beta, int r) {
  require_alpha(alpha);
  const double phi_a = phi(alpha, r);
  if (!(beta > phi_a)) {
    throw DomainError("beta must exceed phi(alpha) = " + std::to_string(phi_a));
  }
  const double b = std::min(beta, 1.0);
  const PiecewiseTrajectory f = optimal_descriptor(alpha, b, r);
  return functional_I(f, 0.0, b) - std::pow(b, r) / r;
}

CltMoments clt_moments(double alpha, const ModelParams& params) {
  require_alpha(alpha);
  const int r = params.r;
  const double t_c = critical_scales(params).t_c;
  const double ph = phi(alpha, r);
  const double denom = 1.0 - std::pow(ph, r - 1);
  CltMoments out;
  out.mu = ph * t_c;
  out.sigma2 = (std::pow(ph, r) / r) / (denom * denom) * t_c;
  return out;
}

}  // namespace percldp
