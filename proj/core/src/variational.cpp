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

#include "percldp/variational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "percldp/error.hpp"
#include "percldp/numeric.hpp"

namespace percldp {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::int64_t kMaxParentCells = 60'000'000;

void require_even_grid(const Trajectory& traj) {
  validate_trajectory(traj);
  const double dx0 = traj.grid[1] - traj.grid[0];
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    const double dx = traj.grid[i + 1] - traj.grid[i];
    if (std::abs(dx - dx0) > 1e-9 * std::max(1.0, std::abs(dx0))) {
      throw DomainError("sigma functional needs an evenly spaced grid");
    }
  }
}

// s^{r-1} for cell i; the first cell borrows x_1 because x_0 = 0.
double cell_weight(const Trajectory& traj, std::size_t i, int r) {
  const double s = (i == 0) ? traj.grid[1] : traj.grid[i];
  return std::pow(s, r - 1);
}

// sigma(s, w) Delta x for a cell with weight s^{r-1} and rise dy = w Delta x:
// dy log(e s^{r-1} Delta x / dy) - s^{r-1} Delta x.
double cell_gain(double weight_dx, double dy) {
  if (dy == 0.0) return -weight_dx;
  return dy * (1.0 + std::log(weight_dx / dy)) - weight_dx;
}

}  // namespace

SigmaEvaluation sigma_total(const Trajectory& traj, int r) {
  require_even_grid(traj);
  if (!is_non_decreasing(traj)) throw DomainError("sigma functional needs non-decreasing values");
  SigmaEvaluation out;
  out.sigma.resize(traj.size() - 1);
  CompensatedSum total;
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const double dx = traj.grid[i + 1] - traj.grid[i];
    const double dy = traj.values[i + 1] - traj.values[i];
    const double gain = cell_gain(cell_weight(traj, i, r) * dx, dy);
    out.sigma[i] = gain / dx;
    total.add(gain);
  }
  out.total = total.value();
  return out;
}

ElResidual el_residual(const Trajectory& traj, int r, std::span<const char> mask) {
  require_even_grid(traj);
  const std::size_t cells = traj.size() - 1;
  if (!mask.empty() && mask.size() != cells) {
    throw DomainError("residual mask must have one entry per cell");
  }
  ElResidual out;
  out.deviation.assign(cells, std::numeric_limits<double>::quiet_NaN());
  out.flagged.assign(cells, false);
  out.included.assign(cells, false);
  std::vector<double> raw(cells, 0.0);
  CompensatedSum sum;
  for (std::size_t i = 0; i < cells; ++i) {
    const double dx = traj.grid[i + 1] - traj.grid[i];
    const double w = (traj.values[i + 1] - traj.values[i]) / dx;
    if (!(w > 0.0)) {
      out.flagged[i] = true;
      continue;
    }
    if (!mask.empty() && !mask[i]) continue;
    raw[i] = std::log(cell_weight(traj, i, r) / w);
    out.included[i] = true;
    sum.add(raw[i]);
    ++out.count;
  }
  if (out.count == 0) return out;
  out.mean = sum.value() / static_cast<double>(out.count);
  for (std::size_t i = 0; i < cells; ++i) {
    if (!out.included[i]) continue;
    out.deviation[i] = raw[i] - out.mean;
    out.max_abs = std::max(out.max_abs, std::abs(out.deviation[i]));
  }
  return out;
}

void validate_problem(const TrajectoryProblem& problem) {
  if (!(problem.alpha >= 0.0 && problem.alpha < 1.0)) {
    throw DomainError("alpha must lie in [0, 1)");
  }
  if (problem.r < 2) throw DomainError("r must be at least 2");
  if (!(problem.beta > 0.0)) throw DomainError("beta must be positive");
  if (problem.m < 8) throw DomainError("grid size m must be at least 8");
  if (!(problem.cap >= problem.beta)) {
    throw DomainError("infeasible problem: cap " + std::to_string(problem.cap) +
                      " is below beta " + std::to_string(problem.beta));
  }
  if (problem.endpoint == EndpointMode::Fixed &&
      !(problem.fixed_end >= problem.beta && problem.fixed_end <= problem.cap)) {
    throw DomainError("fixed endpoint must lie in [beta, cap]");
  }
}

namespace {

struct RowSolver {
  const std::vector<double>& prev;
  const std::vector<double>& gain;  // gain[d] for a rise of d levels
  std::vector<double>& cur;
  std::int32_t* parent;
  std::int64_t prev_hi;

  void scan(std::int64_t j, std::int64_t c_lo, std::int64_t c_hi) {
    double best = kNegInf;
    std::int64_t arg = c_lo;
    for (std::int64_t c = c_lo; c <= c_hi; ++c) {
      const double v = prev[c] + gain[j - c];
      if (v > best) {
        best = v;
        arg = c;
      }
    }
    cur[j] = best;
    parent[j] = static_cast<std::int32_t>(arg);
  }

  // The gain is concave in the rise, so the leftmost argmax column is
  // non-decreasing in the row.
  void split(std::int64_t j_lo, std::int64_t j_hi, std::int64_t c_lo, std::int64_t c_hi) {
    if (j_lo > j_hi) return;
    const std::int64_t mid = j_lo + (j_hi - j_lo) / 2;
    scan(mid, c_lo, std::min({c_hi, mid, prev_hi}));
    const std::int64_t arg = parent[mid];
    split(j_lo, mid - 1, c_lo, arg);
    split(mid + 1, j_hi, arg, c_hi);
  }
};

Trajectory refine_on_hull(const TrajectoryProblem& problem, bool fixed, double end_value) {
  const int m = problem.m;
  const int r = problem.r;
  const double dx = problem.beta / m;
  const double start = problem.alpha * gamma_r(r);
  std::vector<double> grid(m + 1);
  for (int i = 0; i <= m; ++i) grid[i] = (i == m) ? problem.beta : i * dx;
  // Work in u = cumulative s^{r-1} Delta x, where the optimum is the least
  // concave majorant of the obstacle points.
  std::vector<double> u(m + 1, 0.0);
  for (int i = 0; i < m; ++i) {
    const double s = (i == 0) ? grid[1] : grid[i];
    u[i + 1] = u[i] + std::pow(s, r - 1) * dx;
  }
  std::vector<double> bound(grid);
  bound[m] = fixed ? end_value : problem.beta;

  Trajectory out;
  out.grid = grid;
  out.values.assign(m + 1, start);
  int c = 0;
  double f_c = start;
  while (c < m) {
    double best = kNegInf;
    int k_star = m;
    for (int k = c + 1; k <= m; ++k) {
      const double slope = (bound[k] - f_c) / (u[k] - u[c]);
      if (slope >= best) {
        best = slope;
        k_star = k;
      }
    }
    if (!fixed && best <= 1.0) {
      for (int i = c + 1; i <= m; ++i) out.values[i] = f_c + (u[i] - u[c]);
      break;
    }
    for (int i = c + 1; i < k_star; ++i) out.values[i] = f_c + best * (u[i] - u[c]);
    out.values[k_star] = bound[k_star];
    f_c = bound[k_star];
    c = k_star;
  }
  return out;
}

}  // namespace

OptimizerResult maximize_trajectory(const TrajectoryProblem& problem, int levels,
                                    LatticeSearch search) {
  validate_problem(problem);
  if (levels < 1 || levels > 10000) throw DomainError("levels must lie in [1, 10000]");
  const int m = problem.m;
  const int r = problem.r;
  const std::int64_t K = levels;
  if (static_cast<std::int64_t>(m) * (K + 1) > kMaxParentCells) {
    throw GuardError("lattice too large: m * (levels + 1) exceeds " +
                     std::to_string(kMaxParentCells));
  }
  const double start = problem.alpha * gamma_r(r);
  const double h = (problem.cap - start) / static_cast<double>(K);
  const double dx = problem.beta / m;

  std::vector<double> grid(m + 1);
  for (int i = 0; i <= m; ++i) grid[i] = (i == m) ? problem.beta : i * dx;
  auto lowest_level = [&](double x) {
    const double j = std::ceil((x - start) / h - 1e-9);
    return std::max<std::int64_t>(0, static_cast<std::int64_t>(j));
  };

  std::vector<double> prev(K + 1, kNegInf);
  std::vector<double> cur(K + 1, kNegInf);
  std::vector<double> gain(K + 1, 0.0);
  std::vector<std::int32_t> parent(static_cast<std::size_t>(m) * (K + 1), 0);
  prev[0] = 0.0;
  std::int64_t prev_lo = 0;
  std::int64_t prev_hi = 0;

  for (int i = 0; i < m; ++i) {
    const double s = (i == 0) ? grid[1] : grid[i];
    const double weight_dx = std::pow(s, r - 1) * dx;
    for (std::int64_t d = 0; d <= K; ++d) gain[d] = cell_gain(weight_dx, d * h);
    const std::int64_t row_lo = lowest_level(grid[i + 1]);
    if (row_lo > K) throw DomainError("infeasible problem: obstacle exceeds cap");
    std::fill(cur.begin(), cur.end(), kNegInf);
    std::int32_t* row_parent = parent.data() + static_cast<std::size_t>(i) * (K + 1);
    RowSolver solver{prev, gain, cur, row_parent, prev_hi};
    if (search == LatticeSearch::MonotoneSplit) {
      solver.split(row_lo, K, prev_lo, K);
    } else {
      for (std::int64_t j = row_lo; j <= K; ++j) solver.scan(j, prev_lo, std::min(j, prev_hi));
    }
    std::swap(prev, cur);
    prev_lo = row_lo;
    prev_hi = K;
  }

  std::int64_t end_level = 0;
  if (problem.endpoint == EndpointMode::Fixed) {
    end_level = std::llround((problem.fixed_end - start) / h);
    if (end_level < prev_lo || end_level > K) {
      throw DomainError("fixed endpoint is not reachable on the lattice");
    }
  } else {
    double best = kNegInf;
    for (std::int64_t j = prev_lo; j <= K; ++j) {
      if (prev[j] > best) {
        best = prev[j];
        end_level = j;
      }
    }
  }

  OptimizerResult out;
  out.resolution = h;
  out.lattice.grid = grid;
  out.lattice.values.assign(m + 1, start);
  std::int64_t level = end_level;
  for (int i = m; i >= 1; --i) {
    out.lattice.values[i] = start + level * h;
    level = parent[static_cast<std::size_t>(i - 1) * (K + 1) + level];
  }
  out.lattice.values[0] = start;
  out.lattice_objective = sigma_total(out.lattice, r).total;

  const bool fixed = problem.endpoint == EndpointMode::Fixed;
  out.refined = refine_on_hull(problem, fixed, problem.fixed_end);
  if (!fixed && out.refined.values.back() > problem.cap) {
    out.refined = refine_on_hull(problem, true, problem.cap);
  }
  out.refined_objective = sigma_total(out.refined, r).total;
  return out;
}

int lattice_levels(const TrajectoryProblem& problem, double resolution) {
  validate_problem(problem);
  if (!(resolution > 0.0)) throw DomainError("resolution must be positive");
  const double span = problem.cap - problem.alpha * gamma_r(problem.r);
  const double levels = std::ceil(span / resolution - 1e-9);
  if (levels > 10000.0) throw DomainError("resolution too fine: more than 10000 levels");
  return std::max(1, static_cast<int>(levels));
}

std::vector<int> diagonal_contact(const Trajectory& traj, double tol) {
  std::vector<int> out;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (std::abs(traj.values[i] - traj.grid[i]) <= tol) out.push_back(static_cast<int>(i));
  }
  return out;
}

bool is_contiguous(const std::vector<int>& indices) {
  for (std::size_t k = 1; k < indices.size(); ++k) {
    if (indices[k] != indices[k - 1] + 1) return false;
  }
  return true;
}

double claim_coincide_margin(double beta_prime, double beta, double c2, int r) {
  return integral_diagonal(beta_prime, beta, r) - integral_power(c2, beta_prime, beta, r);
}

double claim_touch_margin(double alpha, double beta, double c1, int r) {
  const double rhs = functional_I(optimal_descriptor(alpha, beta, r), 0.0, beta);
  return rhs - integral_power(c1, 0.0, beta, r);
}

double claim_contact_margin(double alpha, double beta, double alpha_prime, int r) {
  const double eta = std::min(alpha, beta);
  const double ag = alpha * gamma_r(r);
  const double c = (alpha_prime - ag) / std::pow(alpha_prime, r);
  const double lhs = integral_power(c, 0.0, alpha_prime, r) + integral_diagonal(alpha_prime, eta, r);
  const double rhs = functional_I(optimal_descriptor(alpha, beta, r), 0.0, eta);
  return rhs - lhs;
}

namespace {

void record(ClaimSummary& summary, ClaimCheck check) {
  summary.all_strict = summary.all_strict && check.margin > 0.0;
  summary.min_margin =
      summary.checks.empty() ? check.margin : std::min(summary.min_margin, check.margin);
  summary.checks.push_back(check);
}

}  // namespace

DiagonalClaimsReport verify_diagonal_claims(int r, std::span<const double> alpha_grid,
                                            std::span<const double> beta_grid) {
  DiagonalClaimsReport report;
  report.r = r;
  for (double alpha : alpha_grid) {
    const double phi_a = phi(alpha, r);
    const double ag = alpha * gamma_r(r);
    for (double beta : beta_grid) {
      if (!(beta > phi_a) || beta > 1.0) continue;

      for (double frac : {0.1, 0.4, 0.7, 0.95}) {
        const double bp = ag + (beta - ag) * frac;
        const double c2_min = 1.0 / (r * std::pow(bp, r - 1));
        for (double scale : {1.0, 1.5, 4.0}) {
          const double c2 = c2_min * scale;
          const double lhs = integral_power(c2, bp, beta, r);
          const double rhs = integral_diagonal(bp, beta, r);
          record(report.coincide, {alpha, beta, bp, lhs, rhs, rhs - lhs});
        }
      }

      if (alpha == 0.0) continue;  // no power curve from the origin clears the diagonal
      const double eta = std::min(alpha, beta);
      const double c1_min = (eta - ag) / std::pow(eta, r);
      const double rhs_full = functional_I(optimal_descriptor(alpha, beta, r), 0.0, beta);
      for (double scale : {1.001, 1.05, 1.5, 3.0}) {
        const double c1 = c1_min * scale;
        const double lhs = integral_power(c1, 0.0, beta, r);
        record(report.touch, {alpha, beta, c1, lhs, rhs_full, rhs_full - lhs});
      }

      const double rhs_eta = functional_I(optimal_descriptor(alpha, beta, r), 0.0, eta);
      for (double frac : {0.0, 0.25, 0.5, 0.9}) {
        const double ap = ag + (eta - ag) * frac;
        const double c = (ap - ag) / std::pow(ap, r);
        const double lhs = integral_power(c, 0.0, ap, r) + integral_diagonal(ap, eta, r);
        record(report.contact, {alpha, beta, ap, lhs, rhs_eta, rhs_eta - lhs});
      }
    }
  }
  return report;
}

}  // namespace percldp
