#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cayley/ball.hpp"

namespace cayley {

// Finite undirected simple graph over vertices 0..n-1.
struct SimpleGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;

  explicit SimpleGraph(int vertices = 0) : n(vertices), adj(vertices) {}

  void add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("SimpleGraph: loop");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("SimpleGraph: vertex out of range");
    if (adjacent(u, v)) return;
    adj[u].insert(std::upper_bound(adj[u].begin(), adj[u].end(), v), v);
    adj[v].insert(std::upper_bound(adj[v].begin(), adj[v].end(), u), u);
  }

  bool adjacent(int u, int v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
  }

  int degree(int u) const { return static_cast<int>(adj[u].size()); }

  std::size_t edge_count() const {
    std::size_t tot = 0;
    for (const auto& l : adj) tot += l.size();
    return tot / 2;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n; ++u)
      for (int v : adj[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool operator==(const SimpleGraph&) const = default;
};

inline SimpleGraph complete_graph(int k) {
  if (k < 1) throw std::invalid_argument("complete_graph: need k >= 1");
  SimpleGraph g(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) g.add_edge(i, j);
  return g;
}

// Box (Cartesian) product: (u1, u2) ~ (v1, v2) iff equal in one coordinate
// and adjacent in the other.  Vertex (i, j) has index i * b.n + j.
inline SimpleGraph cartesian_product(const SimpleGraph& a,
                                     const SimpleGraph& b) {
  SimpleGraph p(a.n * b.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < b.n; ++j) {
      for (int k : a.adj[i])
        if (k > i) p.add_edge(i * b.n + j, k * b.n + j);
      for (int k : b.adj[j])
        if (k > j) p.add_edge(i * b.n + j, i * b.n + k);
    }
  return p;
}

inline SimpleGraph to_simple_graph(const MetricBall& b) {
  SimpleGraph g(static_cast<int>(b.size()));
  for (int u = 0; u < g.n; ++u)
    for (int v : b.adjacency()[u])
      if (v > u) g.add_edge(u, v);
  return g;
}

}  // namespace cayley
