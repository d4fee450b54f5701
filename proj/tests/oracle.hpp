#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here works on flat coordinate vectors with its own modular
// arithmetic, map-based breadth-first search, and unpruned depth-first
// path enumeration — deliberately sharing no code path with the library.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace oracle {

using Flat = std::vector<long long>;

struct Spec {
  int rank = 0;
  std::vector<long long> factors;  // moduli of the cyclic coordinates

  int width() const { return rank + static_cast<int>(factors.size()); }

  Flat reduce(Flat v) const {
    if (static_cast<int>(v.size()) != width())
      throw std::invalid_argument("oracle: wrong coordinate width");
    for (std::size_t i = 0; i < factors.size(); ++i) {
      long long m = factors[i];
      long long& x = v[rank + i];
      x %= m;
      if (x < 0) x += m;
    }
    return v;
  }

  Flat add(const Flat& a, const Flat& b) const {
    Flat c(a);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return reduce(c);
  }

  Flat neg(const Flat& a) const {
    Flat c(a);
    for (auto& x : c) x = -x;
    return reduce(c);
  }

  Flat zero() const { return Flat(width(), 0); }

  // All purely-torsion elements (free part zero), in odometer order.
  std::vector<Flat> torsion_elements() const {
    std::vector<Flat> out;
    Flat cur = zero();
    while (true) {
      out.push_back(cur);
      int i = width() - 1;
      while (i >= rank && ++cur[i] == factors[i - rank]) cur[i--] = 0;
      if (i < rank) break;
    }
    return out;
  }
};

// Exact distances to every element within the given radius.
inline std::map<Flat, int> bfs_distances(const Spec& g,
                                         const std::vector<Flat>& gens,
                                         int radius) {
  std::map<Flat, int> dist;
  std::vector<Flat> frontier{g.zero()};
  dist[g.zero()] = 0;
  for (int d = 1; d <= radius; ++d) {
    std::vector<Flat> next;
    for (const auto& u : frontier)
      for (const auto& t : gens) {
        Flat v = g.add(u, t);
        if (dist.emplace(v, d).second) next.push_back(v);
      }
    frontier = std::move(next);
  }
  return dist;
}

// Distance between two elements; throws when it exceeds max_radius.
inline int distance(const Spec& g, const std::vector<Flat>& gens,
                    const Flat& from, const Flat& to, int max_radius = 64) {
  Flat target = g.add(to, g.neg(from));
  std::map<Flat, int> dist;
  std::vector<Flat> frontier{g.zero()};
  dist[g.zero()] = 0;
  if (target == g.zero()) return 0;
  for (int d = 1; d <= max_radius; ++d) {
    std::vector<Flat> next;
    for (const auto& u : frontier)
      for (const auto& t : gens) {
        Flat v = g.add(u, t);
        if (v == target) return d;
        if (dist.emplace(v, d).second) next.push_back(v);
      }
    if (next.empty())
      throw std::domain_error("oracle: target unreachable");
    frontier = std::move(next);
  }
  throw std::domain_error("oracle: distance exceeds max_radius");
}

// All paths of exactly the geodesic length from `from` to `to`, found by
// unpruned depth-first search over every generator at every step.  Paths
// are returned as point sequences in generator-iteration order.
inline void geodesic_dfs(const Spec& g, const std::vector<Flat>& gens,
                         const Flat& cur, const Flat& to, int remaining,
                         std::vector<Flat>& path,
                         std::vector<std::vector<Flat>>& out) {
  if (remaining == 0) {
    if (cur == to) out.push_back(path);
    return;
  }
  for (const auto& t : gens) {
    Flat nxt = g.add(cur, t);
    path.push_back(nxt);
    geodesic_dfs(g, gens, nxt, to, remaining - 1, path, out);
    path.pop_back();
  }
}

inline std::vector<std::vector<Flat>> enumerate_geodesics(
    const Spec& g, const std::vector<Flat>& gens, const Flat& from,
    const Flat& to, int max_radius = 64) {
  int d = distance(g, gens, from, to, max_radius);
  std::vector<std::vector<Flat>> out;
  std::vector<Flat> path{from};
  geodesic_dfs(g, gens, from, to, d, path, out);
  return out;
}

inline long long count_geodesics(const Spec& g, const std::vector<Flat>& gens,
                                 const Flat& from, const Flat& to,
                                 int max_radius = 64) {
  return static_cast<long long>(
      enumerate_geodesics(g, gens, from, to, max_radius).size());
}

// Number of torsion residues x with 2x = 0, by direct enumeration.
inline long long count_order_le_2(const std::vector<long long>& factors) {
  Spec g{0, factors};
  long long n = 0;
  for (const auto& t : g.torsion_elements()) {
    Flat doubled = g.add(t, t);
    if (doubled == g.zero()) ++n;
  }
  return n;
}

inline int torsion_diameter(const Spec& g, const std::vector<Flat>& gens,
                            int max_radius = 64) {
  int best = 0;
  for (const auto& t : g.torsion_elements())
    best = std::max(best, distance(g, gens, g.zero(), t, max_radius));
  return best;
}

// Ball sizes |B(0)|, ..., |B(radius)| from the BFS distances.
inline std::vector<long long> growth(const Spec& g,
                                     const std::vector<Flat>& gens,
                                     int radius) {
  auto dist = bfs_distances(g, gens, radius);
  std::vector<long long> beta(radius + 1, 0);
  for (const auto& [v, d] : dist) ++beta[d];
  for (int r = 1; r <= radius; ++r) beta[r] += beta[r - 1];
  return beta;
}

}  // namespace oracle
