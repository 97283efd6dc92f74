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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "percldp/error.hpp"
#include "percldp/random.hpp"
#include "percldp/variational.hpp"

using namespace percldp;

namespace {

double sup_gap(const Trajectory& a, const Trajectory& b) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::abs(a.values[i] - b.values[i]));
  return gap;
}

// Random feasible path: f_0 = start, f_i >= max(x_i, f_{i-1}), f_m <= cap,
// built on the lattice start + j h when `lattice` is set.
Trajectory random_feasible(const TrajectoryProblem& pr, double h, bool lattice, Rng& rng) {
  const double start = pr.alpha * gamma_r(pr.r);
  Trajectory t;
  t.grid.resize(pr.m + 1);
  t.values.resize(pr.m + 1);
  for (int i = 0; i <= pr.m; ++i) t.grid[i] = (i == pr.m) ? pr.beta : i * pr.beta / pr.m;
  t.values[0] = start;
  const double top = std::min(pr.cap, std::max(pr.beta * 1.3, start + 0.1));
  for (int i = 1; i <= pr.m; ++i) {
    const double lo = std::max(t.values[i - 1], t.grid[i]);
    double v = lo + (top - lo) * std::pow(rng.uniform(), 6.0) * 0.5;
    if (lattice) {
      v = start + std::ceil((v - start) / h - 1e-9) * h;
      if (v < t.grid[i]) v += h;
    }
    t.values[i] = std::min(v, lattice ? start + std::floor((pr.cap - start) / h + 1e-9) * h : pr.cap);
  }
  return t;
}

}  // namespace

TEST_SUITE("variational") {
  TEST_CASE("sigma on simple trajectories") {
    // f = x on an even grid: w = 1, sigma_i = 1 + (r-1) log s - s^{r-1}.
    const int r = 3;
    Trajectory diag;
    for (int i = 0; i <= 8; ++i) {
      diag.grid.push_back(i / 8.0);
      diag.values.push_back(i / 8.0);
    }
    const SigmaEvaluation ev = sigma_total(diag, r);
    double total = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double s = (i == 0) ? 1.0 / 8 : i / 8.0;
      const double expect = 1.0 + (r - 1) * std::log(s) - s * s;
      CHECK(ev.sigma[i] == doctest::Approx(expect).epsilon(1e-13));
      total += expect / 8.0;
    }
    CHECK(ev.total == doctest::Approx(total).epsilon(1e-13));

    Trajectory flat{{0.0, 0.5, 1.0}, {0.5, 0.5, 1.0}};
    const SigmaEvaluation fl = sigma_total(flat, 2);
    CHECK(fl.sigma[0] == doctest::Approx(-0.5));
    Trajectory uneven{{0.0, 0.3, 1.0}, {0.5, 0.6, 1.0}};
    CHECK_THROWS_AS(sigma_total(uneven, 2), DomainError);
    Trajectory down{{0.0, 0.5, 1.0}, {0.6, 0.5, 1.0}};
    CHECK_THROWS_AS(sigma_total(down, 2), DomainError);
  }

  TEST_CASE("Euler-Lagrange residual") {
    // w = s^{r-1} exactly on every cell gives zero deviation.
    Trajectory t;
    t.grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    t.values = {0.0, 0.0625, 0.125, 0.25, 0.4375};
    const ElResidual el = el_residual(t, 2);
    CHECK(el.count == 4);
    CHECK(el.max_abs < 1e-12);
    t.values = {0.0, 0.1, 0.1, 0.3, 0.5};
    const ElResidual flagged = el_residual(t, 2);
    CHECK(flagged.flagged[1]);
    CHECK(std::isnan(flagged.deviation[1]));
    CHECK(flagged.count == 3);
    const std::vector<char> mask{1, 1, 0, 0};
    CHECK(el_residual(t, 2, mask).count == 1);
  }

  TEST_CASE("problem validation") {
    TrajectoryProblem pr;
    pr.alpha = 0.5;
    pr.beta = 1.0;
    pr.cap = 0.9;
    CHECK_THROWS_AS(maximize_trajectory(pr, 100), DomainError);
    pr.cap = 3.0;
    pr.m = 4;
    CHECK_THROWS_AS(maximize_trajectory(pr, 100), DomainError);
    pr.m = 16;
    pr.endpoint = EndpointMode::Fixed;
    pr.fixed_end = 0.5;
    CHECK_THROWS_AS(maximize_trajectory(pr, 100), DomainError);
    pr.endpoint = EndpointMode::Free;
    CHECK_THROWS_AS(maximize_trajectory(pr, 0), DomainError);
    CHECK(lattice_levels(pr, 1.0 / 2000) == 5500);
  }

  TEST_CASE("monotone split matches exhaustive search") {
    for (auto [alpha, beta, r, m, levels] :
         {std::tuple{0.5, 1.0, 2, 32, 300}, std::tuple{0.8, 0.6, 2, 24, 250},
          std::tuple{0.6, 0.9, 3, 20, 200}, std::tuple{0.0, 0.7, 2, 16, 150},
          std::tuple{0.3, 0.5, 4, 24, 180}}) {
      TrajectoryProblem pr;
      pr.alpha = alpha;
      pr.beta = beta;
      pr.r = r;
      pr.m = m;
      pr.cap = 1.5;
      const auto split = maximize_trajectory(pr, levels, LatticeSearch::MonotoneSplit);
      const auto full = maximize_trajectory(pr, levels, LatticeSearch::Exhaustive);
      CHECK(split.lattice_objective == doctest::Approx(full.lattice_objective).epsilon(1e-13));
      pr.endpoint = EndpointMode::Fixed;
      pr.fixed_end = 1.2;
      const auto fs = maximize_trajectory(pr, levels, LatticeSearch::MonotoneSplit);
      const auto ff = maximize_trajectory(pr, levels, LatticeSearch::Exhaustive);
      CHECK(fs.lattice_objective == doctest::Approx(ff.lattice_objective).epsilon(1e-13));
      CHECK(std::abs(fs.lattice.values.back() - 1.2) <= fs.resolution / 2 + 1e-12);
      CHECK(fs.refined.values.back() == doctest::Approx(1.2).epsilon(1e-12));
    }
  }

  TEST_CASE("optimizer outputs are feasible and beat random feasible paths") {
    Rng rng(21);
    for (auto [alpha, beta, r] : {std::tuple{0.5, 1.0, 2}, std::tuple{0.8, 0.6, 2},
                                  std::tuple{0.6, 0.9, 3}, std::tuple{0.2, 0.8, 2}}) {
      TrajectoryProblem pr;
      pr.alpha = alpha;
      pr.beta = beta;
      pr.r = r;
      pr.m = 40;
      pr.cap = 2.0;
      const int levels = 400;
      const auto res = maximize_trajectory(pr, levels);
      for (const Trajectory* t : {&res.lattice, &res.refined}) {
        CHECK(t->values.front() == doctest::Approx(alpha * gamma_r(r)));
        CHECK(is_non_decreasing(*t));
        CHECK(satisfies_obstacle(*t, 1e-12));
        CHECK(t->values.back() <= pr.cap + 1e-12);
      }
      CHECK(res.refined_objective >= res.lattice_objective - 1e-12);
      CHECK(res.lattice_objective == doctest::Approx(sigma_total(res.lattice, r).total));
      for (int trial = 0; trial < 300; ++trial) {
        const Trajectory lat = random_feasible(pr, res.resolution, true, rng);
        CHECK(sigma_total(lat, r).total <= res.lattice_objective + 1e-12);
        const Trajectory real = random_feasible(pr, res.resolution, false, rng);
        CHECK(sigma_total(real, r).total <= res.refined_objective + 1e-12);
      }
      // Small perturbations of the refined optimum never improve it.
      for (int trial = 0; trial < 300; ++trial) {
        Trajectory t = res.refined;
        const int i = 1 + static_cast<int>(rng.uniform() * (pr.m - 1));
        t.values[i] += (rng.uniform() - 0.5) * 1e-3;
        if (!is_non_decreasing(t) || !satisfies_obstacle(t)) continue;
        CHECK(sigma_total(t, r).total <= res.refined_objective + 1e-13);
      }
    }
  }

  TEST_CASE("refined optimum converges to f*") {
    for (auto [alpha, beta, r] : {std::tuple{0.5, 1.0, 2}, std::tuple{0.8, 0.6, 2},
                                  std::tuple{0.6, 0.9, 3}}) {
      double prev = 1.0;
      for (int m : {32, 128, 512}) {
        TrajectoryProblem pr;
        pr.alpha = alpha;
        pr.beta = beta;
        pr.r = r;
        pr.m = m;
        const auto res = maximize_trajectory(pr, 50);
        const double gap = sup_gap(res.refined, optimal_trajectory(alpha, beta, r, m));
        CHECK(gap < prev);
        prev = gap;
      }
      CHECK(prev < 1e-3);
    }
  }

  TEST_CASE("cap binding re-solves with the end pinned") {
    TrajectoryProblem pr;
    pr.alpha = 0.5;
    pr.beta = 0.4;
    pr.m = 16;
    pr.cap = 0.42;
    const auto res = maximize_trajectory(pr, 100);
    CHECK(res.refined.values.back() <= 0.42 + 1e-12);
    CHECK(is_non_decreasing(res.refined));
  }

  TEST_CASE("contact helpers") {
    Trajectory t{{0.0, 0.25, 0.5, 0.75, 1.0}, {0.2, 0.3, 0.5, 0.75, 1.0}};
    const auto c = diagonal_contact(t, 1e-12);
    CHECK(c == std::vector<int>{2, 3, 4});
    CHECK(is_contiguous(c));
    CHECK_FALSE(is_contiguous({1, 3}));
    CHECK(is_contiguous({}));
  }

  TEST_CASE("diagonal claims") {
    const std::vector<double> alphas{0.1, 0.3, 0.5, 0.7};
    const std::vector<double> betas{0.6, 0.8, 1.0};
    for (int r : {2, 3}) {
      const DiagonalClaimsReport rep = verify_diagonal_claims(r, alphas, betas);
      CHECK(rep.all_strict());
      CHECK(rep.coincide.min_margin > 0.0);
      CHECK_FALSE(rep.touch.checks.empty());
      for (const ClaimCheck& ck : rep.touch.checks) {
        CHECK(ck.margin == doctest::Approx(claim_touch_margin(ck.alpha, ck.beta, ck.knob, r)));
      }
      for (const ClaimCheck& ck : rep.contact.checks) {
        CHECK(ck.margin == doctest::Approx(claim_contact_margin(ck.alpha, ck.beta, ck.knob, r)));
      }
    }
    // At the limiting coefficient the coincide claim degenerates to the
    // diagonal slope at beta' and the margin shrinks toward zero.
    const double m1 = claim_coincide_margin(0.5, 0.6, 1.0, 2);
    const double m2 = claim_coincide_margin(0.5, 0.6, 3.0, 2);
    CHECK(m1 > 0.0);
    CHECK(m2 > m1);
    // Pairs with beta <= phi(alpha) are skipped.
    const std::vector<double> a9{0.9};
    const std::vector<double> b5{0.5};
    CHECK(verify_diagonal_claims(2, a9, b5).coincide.checks.empty());
  }
}
