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
#include <sstream>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "percldp/error.hpp"
#include "percldp/exact_dp.hpp"
#include "percldp/graph.hpp"

using namespace percldp;

namespace {

// Chi-square of graph samples of |A*| against the exact chain law.
bool graph_law_fits(const ModelParams& model, std::int64_t a, const FinalSizeOptions& options,
                    std::uint64_t seed) {
  const std::int64_t runs = 20000;
  const auto sizes = final_size_samples(model, a, runs, seed, options);
  const ChainParams params(model, a, model.n);
  const SurvivalTable table = exact_distribution(params, model.n - a);
  std::vector<double> observed(model.n + 1, 0.0);
  std::vector<double> expected(model.n + 1, 0.0);
  for (auto s : sizes) observed[s] += 1.0;
  for (std::int64_t k = 0; k <= model.n; ++k) expected[k] = runs * table.dist[k];
  const auto [stat, df] = oracle::chi_square(observed, expected);
  return stat < oracle::chi2_quantile(df, 1e-4);
}

}  // namespace

TEST_SUITE("graph_bootstrap") {
  TEST_CASE("graph construction") {
    const Graph k5 = complete_graph(5);
    CHECK(k5.num_vertices() == 5);
    CHECK(k5.num_edges() == 10);
    CHECK(k5.degree(3) == 4);
    CHECK(k5.has_edge(1, 4));
    const Graph p4 = path_graph(4);
    CHECK(p4.num_edges() == 3);
    CHECK(p4.has_edge(2, 1));
    CHECK_FALSE(p4.has_edge(0, 2));
    CHECK(p4.edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
    const std::vector<Edge> loop{{1, 1}};
    CHECK_THROWS_AS(Graph(3, loop), DomainError);
    const std::vector<Edge> dup{{0, 1}, {1, 0}};
    CHECK_THROWS_AS(Graph(3, dup), DomainError);
    const std::vector<Edge> out_of_range{{0, 3}};
    CHECK_THROWS_AS(Graph(3, out_of_range), DomainError);
  }

  TEST_CASE("percolation on small graphs") {
    const std::vector<Vertex> two{0, 1};
    const PercolationResult k5 = percolate(complete_graph(5), two, 2);
    CHECK(k5.active_final.size() == 5);
    CHECK(k5.rounds == 1);
    CHECK(k5.activation_round[4] == 1);
    CHECK(k5.activation_round[0] == 0);

    const Graph p4 = path_graph(4);
    const std::vector<Vertex> ends{0, 3};
    CHECK(percolate(p4, ends, 2).active_final.size() == 2);
    const std::vector<Vertex> three{0, 2, 3};
    const PercolationResult full = percolate(p4, three, 2);
    CHECK(full.active_final.size() == 4);
    CHECK(full.activation_round[1] == 1);

    // A path activates one vertex per round from both ends with r = 1.
    const std::vector<Vertex> first{0};
    const PercolationResult chain = percolate(path_graph(6), first, 1);
    CHECK(chain.rounds == 5);
    CHECK(chain.activation_round[5] == 5);
    CHECK(percolate(path_graph(6), first, 2).activation_round[1] == kNeverActive);
  }

  TEST_CASE("closure is independent of processing order") {
    Rng rng(3);
    for (int trial = 0; trial < 40; ++trial) {
      const Graph g = sample_gnp(120, 0.04, rng);
      std::vector<Vertex> initial;
      for (Vertex v = 0; v < 6; ++v) initial.push_back(v * 7);
      const PercolationResult layered = percolate(g, initial, 2);
      const std::vector<char> shuffled = closure_random_order(g, initial, 2, rng);
      std::vector<Vertex> from_flags;
      for (Vertex v = 0; v < shuffled.size(); ++v) {
        if (shuffled[v]) from_flags.push_back(v);
      }
      CHECK(from_flags == layered.active_final);
      std::vector<int> marks;
      std::vector<Vertex> queue;
      CHECK(closure_size(g, initial, 2, marks, queue) ==
            static_cast<std::int64_t>(layered.active_final.size()));
    }
  }

  TEST_CASE("G(n, p) edge indicators") {
    const int n = 6;
    const double p = 0.3;
    const int samples = 40000;
    std::vector<double> pair_hits(n * n, 0.0);
    std::vector<double> count_hist(16, 0.0);
    Rng rng(5);
    for (int i = 0; i < samples; ++i) {
      const Graph g = sample_gnp(n, p, rng);
      count_hist[g.num_edges()] += 1.0;
      for (auto [u, v] : g.edges()) pair_hits[u * n + v] += 1.0;
    }
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        CHECK(std::abs(pair_hits[u * n + v] / samples - p) < 5 * std::sqrt(p * (1 - p) / samples));
      }
    }
    std::vector<double> expected(16);
    for (int k = 0; k <= 15; ++k) expected[k] = samples * oracle::binomial_pmf(15, k, p);
    const auto [stat, df] = oracle::chi_square(count_hist, expected);
    CHECK(stat < oracle::chi2_quantile(df, 1e-4));
  }

  TEST_CASE("G(n, p) sparse edge count") {
    const std::int64_t n = 20000;
    const double p = 2e-4;
    const double mean = n * (n - 1) / 2.0 * p;
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) total += sample_gnp(n, p, seed).num_edges();
    CHECK(std::abs(total / 20 - mean) < 5 * std::sqrt(mean * (1 - p) / 20));
    CHECK(sample_gnp(50, 1e-12, 1).num_edges() == 0);
  }

  TEST_CASE("graph final sizes follow the exact chain law") {
    const ModelParams model(100, 0.05, 2);
    FinalSizeOptions options;
    CHECK(graph_law_fits(model, 3, options, 1));
    options.sampling = GraphSampling::Lazy;
    CHECK(graph_law_fits(model, 3, options, 2));
    options.initial = InitialSet::UniformRandom;
    CHECK(graph_law_fits(model, 3, options, 3));
    options.sampling = GraphSampling::Full;
    CHECK(graph_law_fits(ModelParams(60, 0.2, 3), 4, options, 4));
  }

  TEST_CASE("final size batches are reproducible across thread counts") {
    const ModelParams model(500, 0.01, 2);
    FinalSizeOptions one;
    one.threads = 1;
    FinalSizeOptions four;
    four.threads = 4;
    CHECK(final_size_samples(model, 5, 300, 8, one) == final_size_samples(model, 5, 300, 8, four));
    four.sampling = GraphSampling::Lazy;
    one.sampling = GraphSampling::Lazy;
    CHECK(final_size_samples(model, 5, 300, 8, one) == final_size_samples(model, 5, 300, 8, four));
  }

  TEST_CASE("edge list round trip") {
    const Graph g = sample_gnp(40, 0.1, 12);
    std::stringstream ss;
    write_edge_list(ss, g);
    const Graph back = read_edge_list(ss);
    CHECK(back.num_vertices() == 40);
    CHECK(back.edges() == g.edges());
    std::stringstream bad("n=3\n0 5\n");
    CHECK_THROWS_AS(read_edge_list(bad), DomainError);
  }
}
