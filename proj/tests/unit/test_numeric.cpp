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
#include <atomic>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "percldp/numeric.hpp"
#include "percldp/parallel.hpp"
#include "percldp/random.hpp"

using namespace percldp;

TEST_SUITE("numeric") {
  TEST_CASE("xlogx conventions") {
    CHECK(xlogx(0.0) == 0.0);
    CHECK(xlogy(0.0, 0.0) == 0.0);
    CHECK(xlogx(2.0) == doctest::Approx(2.0 * std::log(2.0)));
  }

  TEST_CASE("log_choose against exact integer binomials") {
    // Pascal's triangle in doubles is exact up to n = 60.
    std::vector<double> row{1.0};
    for (int n = 1; n <= 60; ++n) {
      std::vector<double> next(n + 1, 1.0);
      for (int k = 1; k < n; ++k) next[k] = row[k - 1] + row[k];
      row = next;
      for (int k = 0; k <= n; ++k) {
        CHECK(log_choose(n, k) == doctest::Approx(std::log(row[k])).epsilon(1e-13));
      }
    }
    CHECK(std::isinf(log_choose(5, 6)));
    // Large arguments against a plain sum of logs.
    for (auto [n, k] : {std::pair<std::int64_t, std::int64_t>{1'000'000, 500'000}, {100'000, 77},
                        {5'000'000, 1'234}}) {
      long double direct = 0.0L;
      for (std::int64_t j = 0; j < k; ++j) direct += std::log(static_cast<long double>(n - j) / (j + 1));
      CHECK(log_choose(n, k) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-12));
    }
  }

  TEST_CASE("binomial_log_pmf sums to one") {
    for (auto [n, p] : {std::pair{10, 0.3}, std::pair{200, 0.025}, std::pair{1000, 0.9}}) {
      double total = 0.0;
      for (int k = 0; k <= n; ++k) total += std::exp(binomial_log_pmf(n, k, p));
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(std::isinf(binomial_log_pmf(5, 7, 0.5)));
  }

  TEST_CASE("compensated sum recovers cancelled terms") {
    std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
    CHECK(compensated_sum(xs) == 2.0);
  }

  TEST_CASE("rng streams are reproducible and distinct") {
    Rng a(42, 3);
    Rng b(42, 3);
    Rng c(42, 4);
    std::set<std::uint64_t> seen;
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
      const auto x = a();
      CHECK(x == b());
      differs = differs || (x != c());
      seen.insert(x);
    }
    CHECK(differs);
    CHECK(seen.size() == 1000);
  }

  TEST_CASE("uniform draws have the right first two moments") {
    Rng rng(7);
    const int n = 200000;
    double s = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      s += u;
      s2 += u * u;
    }
    CHECK(std::abs(s / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
    CHECK(std::abs(s2 / n - 1.0 / 3) < 0.005);
  }

  TEST_CASE("parallel_for covers every index once for any thread count") {
    for (unsigned threads : {1u, 2u, 3u, 8u}) {
      std::vector<int> hits(1001, 0);
      parallel_for(1001, threads, [&](std::int64_t i) { ++hits[i]; });
      CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    }
  }

  TEST_CASE("parallel_for propagates exceptions") {
    CHECK_THROWS_AS(parallel_for(100, 4,
                                 [](std::int64_t i) {
                                   if (i == 57) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
  }
}
