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
#include <numeric>
#include <vector>

#include <boost/math/special_functions/binomial.hpp>

#include "doctest.h"
#include "percldp/error.hpp"
#include "percldp/exact_dp.hpp"
#include "percldp/extremal.hpp"

using namespace percldp;

namespace {

// Every subset of `set` with one element removed.
bool no_smaller_subset_percolates(const Graph& g, const std::vector<Vertex>& set, int r) {
  for (std::size_t skip = 0; skip < set.size(); ++skip) {
    std::vector<Vertex> smaller;
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i != skip) smaller.push_back(set[i]);
    }
    if (is_contagious(g, smaller, r)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("extremal_bounds") {
  TEST_CASE("contagious-set bound reference values") {
    const ContagiousBoundReport b = corollary_bound(2, 1e6, 100.0, 0.0);
    CHECK(b.p == doctest::Approx(5e-5).epsilon(1e-12));
    CHECK(b.t_c == doctest::Approx(400.0));
    CHECK(b.bound == doctest::Approx(200.0 / std::log(1e4)).epsilon(1e-14));
    CHECK(b.bound == doctest::Approx(21.715).epsilon(1e-4));
    CHECK(b.t_delta == b.bound);
    CHECK(b.o1_term == 0.0);
    // The derived p reproduces t_c = vartheta / gamma^2 through the model.
    CHECK(critical_scales(ModelParams(1'000'000, b.p, 2)).t_c == doctest::Approx(400.0));
    const ContagiousBoundReport b3 = corollary_bound(3, 1e7, 50.0, 0.2);
    CHECK(critical_scales(ModelParams(10'000'000, b3.p, 3)).t_c ==
          doctest::Approx(50.0 / (4.0 / 9.0)).epsilon(1e-12));
    CHECK(b3.nu == doctest::Approx(1.0 - 0.8 * std::log(1e7 * std::exp(1.0) / b3.t_delta) /
                                             std::log(1e7 / 50.0)));
  }

  TEST_CASE("corollary calculator ranges and trends") {
    CHECK_THROWS_AS(corollary_bound(2, 1e6, 1.0, 0.1), DomainError);
    CHECK_THROWS_AS(corollary_bound(2, 1e6, 1e6, 0.1), DomainError);
    CHECK_THROWS_AS(corollary_bound(2, 1e6, 100.0, 1.0), DomainError);
    CHECK_THROWS_AS(corollary_bound(2, 1e6, 100.0, -0.1), DomainError);
    CHECK_THROWS_AS(corollary_bound(2, 10.0, 9.0, 0.0), DomainError);
    CHECK(corollary_bound(2, 1e6, 100.0, 0.999999).t_delta < 1e-4);
    double prev = 0.0;
    for (double theta = 2.0; theta < 1e6 / 100.0; theta *= 1.5) {
      const double td = corollary_bound(2, 1e6, theta, 0.2).t_delta;
      CHECK(td > prev);
      prev = td;
    }
  }

  TEST_CASE("first moment pieces") {
    const FirstMomentReport f = first_moment(2, 1e6, 100.0, 0.3);
    CHECK(f.k == static_cast<std::int64_t>(std::floor(f.bound.t_delta)));
    CHECK(f.t == 400);
    CHECK(f.log_choose ==
          doctest::Approx(std::log(boost::math::binomial_coefficient<double>(1'000'000, f.k)))
              .epsilon(1e-13));
    const ChainParams params(ModelParams(1'000'000, f.bound.p, 2), f.k, f.t);
    CHECK(f.log_probability ==
          doctest::Approx(exact_distribution(params, 1200).log_survival_at(f.t)).epsilon(1e-12));
    CHECK(f.log_expected == doctest::Approx(f.log_choose + f.log_probability));
    const double td = f.bound.t_delta;
    CHECK(f.log_analytic_bound == doctest::Approx(td * std::log(1e6 * std::exp(1.0) / td) - 200.0));
    CHECK_THROWS_AS(first_moment(2, 1e6 + 0.5, 100.0, 0.3), DomainError);
  }

  TEST_CASE("brute force on known graphs") {
    const ContagiousSearch k5 = min_contagious_bruteforce(complete_graph(5), 2, 5);
    REQUIRE(k5.size);
    CHECK(*k5.size == 2);
    for (int n = 3; n <= 8; ++n) CHECK(*min_contagious_bruteforce(complete_graph(n), 2, n).size == 2);
    const ContagiousSearch p4 = min_contagious_bruteforce(path_graph(4), 2, 4);
    REQUIRE(p4.size);
    CHECK(*p4.size == 3);
    CHECK(is_contagious(path_graph(4), p4.witness, 2));
    CHECK(no_smaller_subset_percolates(path_graph(4), p4.witness, 2));
    const ContagiousSearch limited = min_contagious_bruteforce(path_graph(4), 2, 2);
    CHECK_FALSE(limited.size);
    CHECK(limited.subsets_examined == 1 + 4 + 6);
    CHECK_THROWS_AS(min_contagious_bruteforce(complete_graph(60), 2, 10), GuardError);
  }

  TEST_CASE("brute force minimality on random graphs") {
    Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
      const Graph g = sample_gnp(10, 0.35, rng);
      for (int r : {2, 3}) {
        const ContagiousSearch s = min_contagious_bruteforce(g, r, 10);
        REQUIRE(s.size);
        CHECK(*s.size >= std::min<std::int64_t>(r, 10));
        CHECK(is_contagious(g, s.witness, r));
        CHECK(no_smaller_subset_percolates(g, s.witness, r));
        // Exhaustive check that no set of size - 1 works.
        if (*s.size >= 1) {
          CHECK_FALSE(min_contagious_bruteforce(g, r, *s.size - 1).size);
        }
      }
    }
  }
}
