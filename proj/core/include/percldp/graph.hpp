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
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "percldp/model.hpp"
#include "percldp/random.hpp"

namespace percldp {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph in compressed adjacency form.
class Graph {
 public:
  Graph() = default;
  // Throws DomainError on self-loops, duplicate edges or ids >= n.
  Graph(std::int64_t n, std::span<const Edge> edges);

  std::int64_t num_vertices() const { return n_; }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(targets_.size() / 2); }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::int64_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(Vertex u, Vertex v) const;
  std::vector<Edge> edges() const;  // u < v, sorted

 private:
  std::int64_t n_ = 0;
  std::vector<std::int64_t> offsets_{0};
  std::vector<Vertex> targets_;
};

Graph complete_graph(std::int64_t n);
Graph path_graph(std::int64_t n);

// G(n, p) by geometric edge skipping: O(n + edges) expected time.
Graph sample_gnp(std::int64_t n, double p, Rng& rng);
Graph sample_gnp(std::int64_t n, double p, std::uint64_t seed);

inline constexpr int kNeverActive = -1;

struct PercolationResult {
  int rounds = 0;                   // synchronous rounds until the fixpoint
  std::vector<Vertex> active_final;  // sorted
  // 0 for initial vertices, k for activation in round k, kNeverActive else.
  std::vector<int> activation_round;
};

// r-neighbour bootstrap percolation by layered queue closure; each vertex
// keeps a mark counter and activates when it reaches r.
PercolationResult percolate(const Graph& graph, std::span<const Vertex> initial, int r);

// Same fixpoint computed with the work list processed in a random order.
// Returns a 0/1 activity flag per vertex.
std::vector<char> closure_random_order(const Graph& graph, std::span<const Vertex> initial, int r,
                                       Rng& rng);

// |A*| only; `marks` and `queue` are scratch buffers reused across calls.
std::int64_t closure_size(const Graph& graph, std::span<const Vertex> initial, int r,
                          std::vector<int>& marks, std::vector<Vertex>& queue);

enum class InitialSet { FirstVertices, UniformRandom };
enum class GraphSampling {
  Full,  // sample every edge up front
  Lazy,  // reveal a vertex's edges only when it is used
};

struct FinalSizeOptions {
  InitialSet initial = InitialSet::FirstVertices;
  GraphSampling sampling = GraphSampling::Full;
  unsigned threads = 0;
};

// |A*| for `runs` independent (graph, initial set) pairs; run i uses RNG
// stream i of `seed`.
std::vector<std::int64_t> final_size_samples(const ModelParams& model, std::int64_t a,
                                             std::int64_t runs, std::uint64_t seed,
                                             const FinalSizeOptions& options = {});

// Edge-list text: first line "n=<n>", then one "u v" pair per line.
void write_edge_list(std::ostream& out, const Graph& graph);
Graph read_edge_list(std::istream& in);

}  // namespace percldp
