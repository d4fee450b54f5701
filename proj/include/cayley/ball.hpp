#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "cayley/core.hpp"
#include "cayley/genset.hpp"

namespace cayley {

// Radius-r truncation of a Cayley graph around the identity: every element
// within word-metric distance r, exact distances, and all edges whose both
// endpoints lie in the ball.  Vertices are indexed in breadth-first order,
// so dist() is nondecreasing.  Vertices at distance exactly r may have
// neighbors outside the ball; is_boundary flags them.
class MetricBall {
 public:
  const GeneratingSet& genset() const { return genset_; }
  int radius() const { return radius_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<GroupElement>& vertices() const { return vertices_; }
  const GroupElement& vertex(int i) const { return vertices_[i]; }
  const std::vector<int>& dist() const { return dist_; }
  int dist(int i) const { return dist_[i]; }
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }

  std::optional<int> index_of(const GroupElement& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Word-metric distance d(0, e), or nullopt when e is outside the ball
  // (i.e. d(0, e) > radius).
  std::optional<int> distance_to_origin(const GroupElement& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return dist_[it->second];
  }

  bool is_boundary(int v) const { return dist_[v] == radius_; }

  std::vector<i64> shell_sizes() const {
    std::vector<i64> s(radius_ + 1, 0);
    for (int d : dist_) ++s[d];
    return s;
  }

  // Vertices [0, shell_prefix_end(r)) are exactly those with dist <= r.
  int shell_prefix_end(int r) const {
    if (r < 0) return 0;
    if (r >= radius_) return static_cast<int>(vertices_.size());
    return shell_end_[r];
  }

 private:
  friend MetricBall ball(const GeneratingSet&, int, const SearchLimits&);

  explicit MetricBall(GeneratingSet s) : genset_(std::move(s)) {}

  GeneratingSet genset_;
  int radius_ = 0;
  std::vector<GroupElement> vertices_;
  std::vector<int> dist_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> shell_end_;
  std::unordered_map<GroupElement, int, ElementHash> index_;
};

inline MetricBall ball(const GeneratingSet& s, int radius,
                       const SearchLimits& limits = {}) {
  if (radius < 0) throw std::invalid_argument("ball: negative radius");
  const GroupSpec& g = s.group();
  MetricBall b(s);
  b.radius_ = radius;
  b.vertices_.push_back(g.identity());
  b.dist_.push_back(0);
  b.adj_.emplace_back();
  b.index_.emplace(b.vertices_[0], 0);

  for (int u = 0; u < static_cast<int>(b.vertices_.size()); ++u) {
    const int du = b.dist_[u];
    for (const auto& t : s.elements()) {
      GroupElement v = g.add(b.vertices_[u], t);
      auto it = b.index_.find(v);
      int vi = -1;
      if (it != b.index_.end()) {
        vi = it->second;
      } else if (du < radius) {
        if (b.vertices_.size() >= limits.max_vertices)
          throw resource_limit_error("ball: vertex cap exceeded",
                                     b.vertices_.size());
        vi = static_cast<int>(b.vertices_.size());
        b.index_.emplace(v, vi);
        b.vertices_.push_back(std::move(v));
        b.dist_.push_back(du + 1);
        b.adj_.emplace_back();
      }
      // Each in-ball edge is recorded once, while processing its
      // smaller-index endpoint (the other endpoint exists by then).
      if (vi > u) {
        b.adj_[u].push_back(vi);
        b.adj_[vi].push_back(u);
      }
    }
  }
  for (auto& l : b.adj_) std::sort(l.begin(), l.end());

  b.shell_end_.assign(radius + 1, 0);
  for (int i = 0; i < static_cast<int>(b.vertices_.size()); ++i)
    b.shell_end_[b.dist_[i]] = i + 1;
  for (int r = 1; r <= radius; ++r)
    b.shell_end_[r] = std::max(b.shell_end_[r], b.shell_end_[r - 1]);
  return b;
}

// d_S(x, y) by breadth-first search from the identity toward y - x.
// Throws resource_limit_error when the vertex budget runs out first and
// std::domain_error when the search space is exhausted without reaching the
// target (the set does not generate).
inline int distance(const GeneratingSet& s, const GroupElement& x,
                    const GroupElement& y, const SearchLimits& limits = {}) {
  const GroupSpec& g = s.group();
  GroupElement target = g.sub(y, x);
  if (target.is_zero()) return 0;

  std::unordered_map<GroupElement, int, ElementHash> dist;
  std::vector<GroupElement> queue{g.identity()};
  dist.emplace(queue[0], 0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    GroupElement cur = queue[head];
    int d = dist[cur];
    for (const auto& t : s.elements()) {
      GroupElement v = g.add(cur, t);
      if (dist.contains(v)) continue;
      if (v == target) return d + 1;
      if (queue.size() >= limits.max_vertices)
        throw resource_limit_error("distance: vertex cap exceeded",
                                   queue.size());
      dist.emplace(v, d + 1);
      queue.push_back(std::move(v));
    }
  }
  throw std::domain_error("distance: target unreachable (set does not generate)");
}

// Cumulative growth function beta(0..r_max): beta(r) = #B(r).
inline std::vector<i64> growth_sequence(const GeneratingSet& s, int r_max,
                                        const SearchLimits& limits = {}) {
  MetricBall b = ball(s, r_max, limits);
  std::vector<i64> beta(r_max + 1, 0);
  auto shells = b.shell_sizes();
  i64 acc = 0;
  for (int r = 0; r <= r_max; ++r) {
    acc += shells[r];
    beta[r] = acc;
  }
  return beta;
}

// Diameter of the torsion subgroup under the ambient word metric:
// max over torsion t of d_S(0, t).
inline int torsion_diameter(const GeneratingSet& s,
                            const SearchLimits& limits = {}) {
  const GroupSpec& g = s.group();
  auto targets = g.torsion_elements();
  std::unordered_map<GroupElement, int, ElementHash> pending;
  for (const auto& t : targets) pending.emplace(t, 0);

  int best = 0;
  std::unordered_map<GroupElement, int, ElementHash> dist;
  std::vector<GroupElement> queue{g.identity()};
  dist.emplace(queue[0], 0);
  pending.erase(queue[0]);
  for (std::size_t head = 0; head < queue.size() && !pending.empty(); ++head) {
    GroupElement cur = queue[head];
    int d = dist[cur];
    for (const auto& t : s.elements()) {
      GroupElement v = g.add(cur, t);
      if (dist.contains(v)) continue;
      if (queue.size() >= limits.max_vertices)
        throw resource_limit_error("torsion_diameter: vertex cap exceeded",
                                   queue.size());
      if (pending.erase(v)) best = std::max(best, d + 1);
      dist.emplace(v, d + 1);
      queue.push_back(std::move(v));
      if (pending.empty()) break;
    }
  }
  if (!pending.empty())
    throw std::domain_error(
        "torsion_diameter: torsion not reachable (set does not generate)");
  return best;
}

}  // namespace cayley
