#pragma once

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "cayley/ball.hpp"

namespace cayley {

// Finite path g_0, ..., g_n whose consecutive differences are meant to lie
// in a generating set.  The struct itself is plain data; geodesicity and
// step validity are checked by the functions below.
struct Segment {
  std::vector<GroupElement> points;

  int length() const { return static_cast<int>(points.size()) - 1; }
  bool operator==(const Segment&) const = default;
};

inline std::vector<GroupElement> segment_steps(const GroupSpec& g,
                                               const Segment& seg) {
  std::vector<GroupElement> steps;
  for (std::size_t i = 0; i + 1 < seg.points.size(); ++i)
    steps.push_back(g.sub(seg.points[i + 1], seg.points[i]));
  return steps;
}

// A length-n path over S between points at distance n is geodesic; this
// checks both parts.
inline bool is_geodesic_segment(const GeneratingSet& s, const Segment& seg,
                                const SearchLimits& limits = {}) {
  if (seg.points.empty()) return false;
  const GroupSpec& g = s.group();
  for (const auto& st : segment_steps(g, seg))
    if (!s.contains(st)) return false;
  return distance(s, seg.points.front(), seg.points.back(), limits) ==
         seg.length();
}

// Same check against a precomputed ball (any ball over the same generating
// set whose radius covers the segment length).  Distances are queried on
// endpoint differences, so segments may live anywhere in the group.
inline bool is_geodesic_segment(const MetricBall& b, const Segment& seg) {
  if (seg.points.empty()) return false;
  if (seg.length() > b.radius())
    throw std::invalid_argument(
        "is_geodesic_segment: ball radius below segment length");
  const GeneratingSet& s = b.genset();
  const GroupSpec& g = s.group();
  for (const auto& st : segment_steps(g, seg))
    if (!s.contains(st)) return false;
  auto d = b.distance_to_origin(g.sub(seg.points.back(), seg.points.front()));
  // Outside the ball means the endpoint distance exceeds the radius and
  // hence the length: not geodesic.
  return d && *d == seg.length();
}

// All geodesics from x to y, in lexicographic step order.  Every point v on
// such a geodesic satisfies d(v, y) <= d(x, y), so one ball of radius
// d(x, y) around the identity answers every distance query, and the search
// never has to look outside it.
inline std::vector<Segment> enumerate_geodesics(const GeneratingSet& s,
                                                const GroupElement& x,
                                                const GroupElement& y,
                                                const SearchLimits& limits = {}) {
  const GroupSpec& g = s.group();
  const GroupElement target = g.sub(y, x);
  const int d = distance(s, x, y, limits);
  std::vector<Segment> out;
  if (d == 0) {
    out.push_back(Segment{{x}});
    return out;
  }
  const MetricBall b = ball(s, d, limits);

  std::vector<GroupElement> path{x};
  GroupElement w = g.identity();

  auto dfs = [&](auto&& self, const GroupElement& rel, int remaining) -> void {
    if (remaining == 0) {
      if (out.size() >= limits.max_geodesics)
        throw geodesic_cap_error("enumerate_geodesics: count cap exceeded",
                                 limits.max_geodesics);
      out.push_back(Segment{path});
      return;
    }
    for (const auto& t : s.elements()) {
      GroupElement nrel = g.add(rel, t);
      auto rem = b.distance_to_origin(g.sub(target, nrel));
      if (rem && *rem == remaining - 1) {
        path.push_back(g.add(x, nrel));
        self(self, nrel, remaining - 1);
        path.pop_back();
      }
    }
  };
  dfs(dfs, w, d);
  return out;
}

// Number of geodesics from x to y, computed by dynamic programming over the
// metric interval {v : d(x,v) + d(v,y) = d(x,y)} layer by layer.  Agrees
// with enumerate_geodesics().size() but needs no enumeration cap.
inline i64 count_geodesics(const GeneratingSet& s, const GroupElement& x,
                           const GroupElement& y,
                           const SearchLimits& limits = {}) {
  const GroupSpec& g = s.group();
  const GroupElement target = g.sub(y, x);
  const int d = distance(s, x, y, limits);
  if (d == 0) return 1;
  const MetricBall b = ball(s, d, limits);

  std::unordered_map<GroupElement, i64, ElementHash> count;
  count.emplace(g.identity(), 1);
  // Ball vertices come in distance order, so a single left-to-right sweep
  // visits the interval layer by layer.
  for (std::size_t i = 0; i < b.size(); ++i) {
    const GroupElement& w = b.vertex(i);
    auto it = count.find(w);
    if (it == count.end() || it->second == 0) continue;
    const int dw = b.dist()[i];
    auto back = b.distance_to_origin(g.sub(target, w));
    if (!back || dw + *back != d) continue;
    if (dw == d) continue;
    const i64 c = it->second;
    for (const auto& t : s.elements()) {
      GroupElement v = g.add(w, t);
      auto dv = b.distance_to_origin(v);
      auto dvy = b.distance_to_origin(g.sub(target, v));
      if (dv && dvy && *dv == dw + 1 && *dv + *dvy == d) count[v] += c;
    }
  }
  auto it = count.find(target);
  return it == count.end() ? 0 : it->second;
}

// Applies a permutation to the steps of a geodesic segment.  The endpoints
// are unchanged (the step sum commutes) and the result is again geodesic:
// it is a length-n path over S between points at distance n.
inline Segment reorder_segment(const GeneratingSet& s, const Segment& seg,
                               const std::vector<int>& perm,
                               const SearchLimits& limits = {}) {
  const GroupSpec& g = s.group();
  const int n = seg.length();
  if (n < 0) throw std::invalid_argument("reorder_segment: empty segment");
  auto steps = segment_steps(g, seg);
  for (const auto& st : steps)
    if (!s.contains(st))
      throw std::invalid_argument(
          "reorder_segment: segment is not a path over the generating set");
  if (distance(s, seg.points.front(), seg.points.back(), limits) != n)
    throw std::invalid_argument("reorder_segment: segment is not geodesic");

  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("reorder_segment: permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p])
      throw std::invalid_argument("reorder_segment: invalid permutation");
    seen[p] = true;
  }

  Segment out;
  out.points.push_back(seg.points.front());
  for (int i = 0; i < n; ++i)
    out.points.push_back(g.add(out.points.back(), steps[perm[i]]));
  return out;
}

}  // namespace cayley
