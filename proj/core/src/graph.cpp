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

#include "percldp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "percldp/error.hpp"
#include "percldp/parallel.hpp"

namespace percldp {

Graph::Graph(std::int64_t n, std::span<const Edge> edges) : n_(n) {
  if (n < 0 || n > static_cast<std::int64_t>(UINT32_MAX)) {
    throw DomainError("vertex count out of range");
  }
  std::vector<std::int64_t> degree(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw DomainError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                        ") references a vertex outside [0, n)");
    }
    if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
    ++degree[u];
    ++degree[v];
  }
  offsets_.assign(n + 1, 0);
  for (std::int64_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  targets_.assign(offsets_[n], 0);
  std::vector<std::int64_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    targets_[fill[u]++] = v;
    targets_[fill[v]++] = u;
  }
  for (std::int64_t v = 0; v < n; ++v) {
    auto first = targets_.begin() + offsets_[v];
    auto last = targets_.begin() + offsets_[v + 1];
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw DomainError("duplicate edge at vertex " + std::to_string(v));
    }
  }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (std::int64_t u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(static_cast<Vertex>(u))) {
      if (u < v) out.emplace_back(static_cast<Vertex>(u), v);
    }
  }
  return out;
}

Graph complete_graph(std::int64_t n) {
  std::vector<Edge> edges;
  for (std::int64_t u = 0; u < n; ++u) {
    for (std::int64_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

Graph path_graph(std::int64_t n) {
  std::vector<Edge> edges;
  for (std::int64_t v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

namespace {

// Gap to the next success in a Bernoulli(p) sequence, minus one.
inline std::int64_t geometric_skip(double log_q, Rng& rng) {
  const double u = 1.0 - rng.uniform();  // (0, 1]
  const double skip = std::floor(std::log(u) / log_q);
  return skip > 9e18 ? std::int64_t{9'000'000'000'000'000'000} : static_cast<std::int64_t>(skip);
}

}  // namespace

Graph sample_gnp(std::int64_t n, double p, Rng& rng) {
  if (n < 0) throw DomainError("n must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  if (p == 0.0 || n < 2) return Graph(n, {});
  if (p == 1.0) return complete_graph(n);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p * n * (n - 1) / 2 * 1.1) + 16);
  const double log_q = std::log1p(-p);
  // Batagelj-Brandes: walk the lower triangle (v, w), w < v, in row order.
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    w += 1 + geometric_skip(log_q, rng);
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
  }
  return Graph(n, edges);
}

Graph sample_gnp(std::int64_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  return sample_gnp(n, p, rng);
}

namespace {

void check_initial(const Graph& graph, std::span<const Vertex> initial) {
  for (Vertex v : initial) {
    if (v >= graph.num_vertices()) {
      throw DomainError("initial vertex " + std::to_string(v) + " outside the graph");
    }
  }
}

}  // namespace

PercolationResult percolate(const Graph& graph, std::span<const Vertex> initial, int r) {
  if (r < 1) throw DomainError("threshold r must be positive");
  check_initial(graph, initial);
  const std::int64_t n = graph.num_vertices();
  PercolationResult out;
  out.activation_round.assign(n, kNeverActive);
  std::vector<int> marks(n, 0);
  std::vector<Vertex> frontier;
  for (Vertex v : initial) {
    if (out.activation_round[v] == kNeverActive) {
      out.activation_round[v] = 0;
      frontier.push_back(v);
    }
  }
  std::vector<Vertex> next;
  int round = 0;
  while (!frontier.empty()) {
    next.clear();
    for (Vertex v : frontier) {
      for (Vertex w : graph.neighbors(v)) {
        if (out.activation_round[w] != kNeverActive) continue;
        if (++marks[w] == r) {
          out.activation_round[w] = round + 1;
          next.push_back(w);
        }
      }
    }
    if (!next.empty()) ++round;
    std::swap(frontier, next);
  }
  out.rounds = round;
  for (std::int64_t v = 0; v < n; ++v) {
    if (out.activation_round[v] != kNeverActive) out.active_final.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::vector<char> closure_random_order(const Graph& graph, std::span<const Vertex> initial, int r,
                                       Rng& rng) {
  check_initial(graph, initial);
  const std::int64_t n = graph.num_vertices();
  std::vector<char> active(n, 0);
  std::vector<int> marks(n, 0);
  std::vector<Vertex> work;
  for (Vertex v : initial) {
    if (!active[v]) {
      active[v] = 1;
      work.push_back(v);
    }
  }
  while (!work.empty()) {
    const std::size_t pick = static_cast<std::size_t>(rng() % work.size());
    const Vertex v = work[pick];
    work[pick] = work.back();
    work.pop_back();
    for (Vertex w : graph.neighbors(v)) {
      if (active[w]) continue;
      if (++marks[w] >= r) {
        active[w] = 1;
        work.push_back(w);
      }
    }
  }
  return active;
}

std::int64_t closure_size(const Graph& graph, std::span<const Vertex> initial, int r,
                          std::vector<int>& marks, std::vector<Vertex>& queue) {
  const std::int64_t n = graph.num_vertices();
  marks.assign(n, 0);
  queue.clear();
  // marks[v] == -1 flags an active vertex.
  for (Vertex v : initial) {
    if (marks[v] != -1) {
      marks[v] = -1;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Vertex w : graph.neighbors(queue[head])) {
      if (marks[w] == -1) continue;
      if (++marks[w] == r) {
        marks[w] = -1;
        queue.push_back(w);
      }
    }
  }
  return static_cast<std::int64_t>(queue.size());
}

namespace {

std::vector<Vertex> draw_initial(std::int64_t n, std::int64_t a, InitialSet mode, Rng& rng) {
  std::vector<Vertex> initial;
  initial.reserve(a);
  if (mode == InitialSet::FirstVertices) {
    for (std::int64_t v = 0; v < a; ++v) initial.push_back(static_cast<Vertex>(v));
    return initial;
  }
  // Floyd's sampling of a distinct vertices.
  std::unordered_set<Vertex> chosen;
  for (std::int64_t j = n - a; j < n; ++j) {
    const auto t = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(j + 1));
    const Vertex pick = chosen.insert(t).second ? t : static_cast<Vertex>(j);
    if (pick != t) chosen.insert(pick);
    initial.push_back(pick);
  }
  std::sort(initial.begin(), initial.end());
  return initial;
}

// Deferred-decision exploration: a vertex's edges to every vertex not yet
// used are drawn when it is used; edges to used vertices were drawn then.
std::int64_t lazy_final_size(std::int64_t n, double p, int r, std::span<const Vertex> initial,
                             Rng& rng) {
  std::unordered_map<Vertex, int> marks;  // -1 = active
  std::unordered_set<Vertex> used;
  std::vector<Vertex> queue(initial.begin(), initial.end());
  for (Vertex v : initial) marks[v] = -1;
  const double log_q = std::log1p(-p);
  std::int64_t active = static_cast<std::int64_t>(queue.size());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (std::int64_t w = -1;;) {
      w += 1 + (p >= 1.0 ? 0 : geometric_skip(log_q, rng));
      if (w >= n) break;
      const auto u = static_cast<Vertex>(w);
      if (u == v || used.count(u)) continue;
      int& m = marks[u];
      if (m == -1) continue;
      if (++m == r) {
        m = -1;
        queue.push_back(u);
        ++active;
      }
    }
    used.insert(v);
  }
  return active;
}

}  // namespace

std::vector<std::int64_t> final_size_samples(const ModelParams& model, std::int64_t a,
                                             std::int64_t runs, std::uint64_t seed,
                                             const FinalSizeOptions& options) {
  if (a < 0 || a > model.n) throw DomainError("initial size a must lie in [0, n]");
  if (runs < 1) throw DomainError("runs must be at least 1");
  std::vector<std::int64_t> sizes(runs, 0);
  parallel_for(runs, options.threads, [&](std::int64_t i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    const auto initial = draw_initial(model.n, a, options.initial, rng);
    if (options.sampling == GraphSampling::Lazy) {
      sizes[i] = lazy_final_size(model.n, model.p, model.r, initial, rng);
      return;
    }
    const Graph g = sample_gnp(model.n, model.p, rng);
    std::vector<int> marks;
    std::vector<Vertex> queue;
    sizes[i] = closure_size(g, initial, model.r, marks, queue);
  });
  return sizes;
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  out << "n=" << graph.num_vertices() << '\n';
  for (const auto& [u, v] : graph.edges()) out << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::int64_t n = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("n=", 0) != 0) throw DomainError("edge list must start with a header \"n=<n>\"");
    try {
      n = std::stoll(line.substr(2));
    } catch (const std::exception&) {
      throw DomainError("malformed edge list header: " + line);
    }
    break;
  }
  if (n < 0) throw DomainError("edge list is missing the \"n=<n>\" header");
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0) throw DomainError("malformed edge line: " + line);
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph(n, edges);
}

}  // namespace percldp
