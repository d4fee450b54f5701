#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "cayley/graphs.hpp"

namespace cayley {

struct VertexBijection {
  std::vector<int> map;  // domain index -> codomain index
};

// Full adjacency check in both directions: u ~ v in a iff map(u) ~ map(v)
// in b, for every vertex pair.
inline bool is_edge_preserving(const SimpleGraph& a, const SimpleGraph& b,
                               const VertexBijection& phi) {
  if (a.n != b.n || static_cast<int>(phi.map.size()) != a.n) return false;
  std::vector<bool> hit(b.n, false);
  for (int v : phi.map) {
    if (v < 0 || v >= b.n || hit[v]) return false;
    hit[v] = true;
  }
  for (int u = 0; u < a.n; ++u) {
    if (a.degree(u) != b.degree(phi.map[u])) return false;
    std::vector<int> mapped;
    mapped.reserve(a.adj[u].size());
    for (int v : a.adj[u]) mapped.push_back(phi.map[v]);
    std::sort(mapped.begin(), mapped.end());
    if (mapped != b.adj[phi.map[u]]) return false;
  }
  return true;
}

struct IsoSearchResult {
  std::optional<VertexBijection> bijection;
  std::uint64_t nodes = 0;
  // Search space exhausted: non-existence is proven (for these graphs).
  bool exhausted = false;
};

namespace detail {

struct IsoInvariant {
  int shell = 0;
  int degree = 0;
  std::vector<std::pair<int, int>> neighborhood;  // sorted (shell, degree)

  bool operator==(const IsoInvariant&) const = default;
};

inline std::vector<IsoInvariant> iso_invariants(const SimpleGraph& g,
                                                const std::vector<int>* shells) {
  std::vector<IsoInvariant> inv(g.n);
  for (int u = 0; u < g.n; ++u) {
    inv[u].shell = shells ? (*shells)[u] : 0;
    inv[u].degree = g.degree(u);
  }
  for (int u = 0; u < g.n; ++u) {
    for (int v : g.adj[u])
      inv[u].neighborhood.emplace_back(inv[v].shell, inv[v].degree);
    std::sort(inv[u].neighborhood.begin(), inv[u].neighborhood.end());
  }
  return inv;
}

}  // namespace detail

// Backtracking isomorphism search.  Candidate images are restricted by a
// per-vertex invariant (distance shell when given, degree, sorted multiset
// of neighbor shell/degree pairs); partial maps are kept consistent on all
// previously mapped pairs, so a completed map is an isomorphism.  Domain
// vertices are processed in breadth-first order from the pin (or vertex 0),
// keeping each new vertex anchored to already-mapped neighbors on connected
// graphs.  node_cap bounds decision nodes; exceeding it throws, which is
// distinct from exhausted == true (proven non-existence).
inline IsoSearchResult find_graph_isomorphism(
    const SimpleGraph& a, const SimpleGraph& b,
    const std::vector<int>* shells_a = nullptr,
    const std::vector<int>* shells_b = nullptr,
    std::optional<std::pair<int, int>> pin = std::nullopt,
    std::uint64_t node_cap = 1'000'000) {
  IsoSearchResult res;
  if (a.n != b.n) {
    res.exhausted = true;
    return res;
  }
  if (a.n == 0) {
    res.bijection = VertexBijection{};
    return res;
  }

  auto inv_a = detail::iso_invariants(a, shells_a);
  auto inv_b = detail::iso_invariants(b, shells_b);

  // Candidate lists per domain vertex.
  std::vector<std::vector<int>> cand(a.n);
  for (int u = 0; u < a.n; ++u) {
    for (int v = 0; v < b.n; ++v)
      if (inv_a[u] == inv_b[v]) cand[u].push_back(v);
    if (pin && u == pin->first) {
      bool keep = std::find(cand[u].begin(), cand[u].end(), pin->second) !=
                  cand[u].end();
      cand[u].clear();
      if (keep) cand[u].push_back(pin->second);
    }
    if (cand[u].empty()) {
      res.exhausted = true;
      return res;
    }
  }

  // Breadth-first domain order from the pinned vertex.
  std::vector<int> order;
  std::vector<bool> seen(a.n, false);
  std::vector<int> queue{pin ? pin->first : 0};
  seen[queue[0]] = true;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    order.push_back(queue[h]);
    for (int v : a.adj[queue[h]])
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
  }
  for (int u = 0; u < a.n; ++u)  // disconnected remainder, if any
    if (!seen[u]) order.push_back(u);

  std::vector<int> map(a.n, -1), used(b.n, 0);
  std::vector<int> placed;

  auto consistent = [&](int u, int v) {
    for (int w : placed) {
      if (a.adjacent(u, w) != b.adjacent(v, map[w])) return false;
    }
    return true;
  };

  auto backtrack = [&](auto&& self, std::size_t i) -> bool {
    if (i == order.size()) return true;
    int u = order[i];
    for (int v : cand[u]) {
      if (used[v]) continue;
      if (++res.nodes > node_cap)
        throw resource_limit_error("find_graph_isomorphism: node cap exceeded",
                                   res.nodes);
      if (!consistent(u, v)) continue;
      map[u] = v;
      used[v] = 1;
      placed.push_back(u);
      if (self(self, i + 1)) return true;
      placed.pop_back();
      used[v] = 0;
      map[u] = -1;
    }
    return false;
  };

  if (backtrack(backtrack, 0)) {
    res.bijection = VertexBijection{std::move(map)};
  } else {
    res.exhausted = true;
  }
  return res;
}

// Isomorphism search between two metric balls.  With fix_origin the origin
// maps to the origin and distance shells are part of the vertex invariant
// (any origin-fixing isomorphism preserves them on Cayley balls).
inline IsoSearchResult find_ball_isomorphism(const MetricBall& a,
                                             const MetricBall& b,
                                             bool fix_origin,
                                             std::uint64_t node_cap = 1'000'000) {
  SimpleGraph ga = to_simple_graph(a);
  SimpleGraph gb = to_simple_graph(b);
  if (fix_origin)
    return find_graph_isomorphism(ga, gb, &a.dist(), &b.dist(),
                                  std::make_pair(0, 0), node_cap);
  return find_graph_isomorphism(ga, gb, nullptr, nullptr, std::nullopt,
                                node_cap);
}

// True when the bijection maps every distance shell of a onto the same
// shell of b.
inline bool preserves_shells(const MetricBall& a, const MetricBall& b,
                             const VertexBijection& phi) {
  if (phi.map.size() != a.size() || a.size() != b.size()) return false;
  for (std::size_t u = 0; u < a.size(); ++u)
    if (a.dist()[u] != b.dist()[phi.map[u]]) return false;
  return true;
}

}  // namespace cayley
