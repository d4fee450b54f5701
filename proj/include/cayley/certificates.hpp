#pragma once

#include <numeric>
#include <optional>

#include "cayley/lines.hpp"

namespace cayley {

// Explicit quasi-convexity constants for quasi-algebraic lines whose type s
// is a norm-maximal generator, all in exact integer arithmetic over squared
// norms.  Writing p for the orthogonal projection onto the line direction
// pi(s) and N = <pi(s), pi(s)>:
//
//   A  = max { <pi(t), pi(s)> : t in S, pi(t) != pi(s) }   (signed),
//   mu = A / sqrt(N)  (the extremal off-type projection; A < N always,
//        by maximality and Cauchy-Schwarz),
//   off-type steps of a geodesic between points c-close to the line number
//        at most 4c*N / (N - A),
//   C(c) = c + ceil(8c*N / (N - A)) + diam(torsion),
//
// and every geodesic between c-close endpoints fellow-travels the line
// within C(c), index by index.
struct QuasiConvexityCertificate {
  GroupElement type_elem;
  i64 norm_sq = 0;         // N
  i64 max_projection = 0;  // A (meaningful only when any_off_type)
  bool any_off_type = false;
  i64 mu_sq_num = 0;  // sign(A) * A^2 / N as a reduced fraction
  i64 mu_sq_den = 1;
  i64 torsion_diam = 0;

  // Upper bound for the number of off-type steps of a relevant geodesic.
  i64 k_bound(i64 c) const {
    if (!any_off_type) return 0;
    return ceil_div(4 * c * norm_sq, norm_sq - max_projection);
  }

  // Fellow-traveller bound C(c).
  i64 closeness_bound(i64 c) const {
    i64 middle =
        any_off_type ? ceil_div(8 * c * norm_sq, norm_sq - max_projection) : 0;
    return c + middle + torsion_diam;
  }
};

inline QuasiConvexityCertificate quasiconvexity_certificate(
    const GeneratingSet& s, const GroupElement& type_elem,
    const SearchLimits& limits = {}) {
  const GroupSpec& g = s.group();
  QuasiConvexityCertificate cert;
  cert.type_elem = g.canonical(type_elem.free, type_elem.torsion);
  if (!s.contains(cert.type_elem))
    throw std::invalid_argument(
        "quasiconvexity_certificate: type element not in generating set");
  cert.norm_sq = free_norm_sq(cert.type_elem);
  if (cert.norm_sq == 0)
    throw std::invalid_argument("quasiconvexity_certificate: zero quasi-type");
  for (const auto& t : s.elements())
    if (free_norm_sq(t) > cert.norm_sq)
      throw std::invalid_argument(
          "quasiconvexity_certificate: type element is not norm-maximal");

  for (const auto& t : s.elements()) {
    if (t.free == cert.type_elem.free) continue;
    i64 proj = free_dot(t.free, cert.type_elem.free);
    if (!cert.any_off_type || proj > cert.max_projection) {
      cert.any_off_type = true;
      cert.max_projection = proj;
    }
  }
  if (cert.any_off_type) {
    if (cert.max_projection >= cert.norm_sq)
      throw std::logic_error(
          "quasiconvexity_certificate: projection bound violated");
    i64 num = cert.max_projection * cert.max_projection;
    if (cert.max_projection < 0) num = -num;
    i64 gg = std::gcd(std::abs(num), cert.norm_sq);
    if (gg == 0) gg = 1;
    cert.mu_sq_num = num / gg;
    cert.mu_sq_den = cert.norm_sq / gg;
  }
  cert.torsion_diam = torsion_diameter(s, limits);
  return cert;
}

struct FellowTravellerViolation {
  int n = 0, m = 0;    // line indices of the perturbed pair
  GroupElement x, y;   // endpoints, d(x, gamma_n) <= c and d(y, gamma_m) <= c
  int j = 0;           // geodesic position of the offending point
  GroupElement point;  // lies on some geodesic x -> y at position j
  i64 distance = 0;    // d(point, gamma_{n+j})
  i64 bound = 0;
  Segment geodesic;    // an explicit geodesic through the point
};

struct FellowTravellerResult {
  bool ok = true;
  std::optional<FellowTravellerViolation> violation;
  std::size_t points_checked = 0;
};

namespace detail {

// One geodesic from x to y by greedy descent against ball lookups; valid
// whenever all intermediate differences stay inside the ball's radius.
inline Segment greedy_geodesic(const GeneratingSet& s, const MetricBall& b,
                               const GroupElement& x, const GroupElement& y) {
  const GroupSpec& g = s.group();
  Segment seg;
  seg.points.push_back(x);
  GroupElement cur = x;
  auto rem = b.distance_to_origin(g.sub(y, cur));
  while (rem && *rem > 0) {
    bool moved = false;
    for (const auto& t : s.elements()) {
      GroupElement nxt = g.add(cur, t);
      auto d = b.distance_to_origin(g.sub(y, nxt));
      if (d && *d == *rem - 1) {
        cur = std::move(nxt);
        seg.points.push_back(cur);
        rem = d;
        moved = true;
        break;
      }
    }
    if (!moved) throw std::logic_error("greedy_geodesic: descent stalled");
  }
  return seg;
}

}  // namespace detail

// Checks the fellow-traveller property with an explicit bound: for all
// window indices n <= m, all x within c of gamma_n and y within c of
// gamma_m, every geodesic from x to y satisfies
// d(geodesic point at position j, gamma_{n+j}) <= bound for all j with
// n + j inside the window.
//
// A point p lies on some geodesic from x to y at position j iff
// d(x,p) = j and d(p,y) = d(x,y) - j, so scanning these interval layers is
// equivalent to enumerating every geodesic pointwise.
inline FellowTravellerResult check_fellow_traveller_bound(
    const GeneratingSet& s, const LineWindow& w, i64 bound, i64 c,
    const SearchLimits& limits = {}) {
  if (c < 0) throw std::invalid_argument("check_fellow_traveller: c < 0");
  const GroupSpec& g = s.group();
  if (!is_geodesic_window(s, w, limits))
    throw std::invalid_argument(
        "check_fellow_traveller: not a geodesic window");

  const i64 L = w.length();
  // Radius covering every queried difference: endpoints are within
  // L + 2c of each other, geodesic points within (L + 2c) + c + L of the
  // compared line point.
  const int R = static_cast<int>(2 * L + 5 * c + 1);
  const MetricBall b = ball(s, R, limits);
  const int cball_end = b.shell_prefix_end(static_cast<int>(c));

  FellowTravellerResult res;
  for (int n = w.a(); n <= w.b(); ++n)
    for (int m = n; m <= w.b(); ++m)
      for (int xi = 0; xi < cball_end; ++xi)
        for (int yi = 0; yi < cball_end; ++yi) {
          GroupElement x = g.add(w.at(n), b.vertex(xi));
          GroupElement y = g.add(w.at(m), b.vertex(yi));
          GroupElement gd = g.sub(y, x);
          auto kk = b.distance_to_origin(gd);
          if (!kk) throw std::logic_error("fellow traveller: radius too small");
          const int k = *kk;
          const int uend = b.shell_prefix_end(k);
          for (int ui = 0; ui < uend; ++ui) {
            const int j = b.dist()[ui];
            if (n + j > w.b() || j > k) continue;
            auto back = b.distance_to_origin(g.sub(gd, b.vertex(ui)));
            if (!back || *back != k - j) continue;
            GroupElement p = g.add(x, b.vertex(ui));
            auto dev = b.distance_to_origin(g.sub(w.at(n + j), p));
            if (!dev) throw std::logic_error("fellow traveller: radius too small");
            ++res.points_checked;
            if (*dev > bound) {
              FellowTravellerViolation v;
              v.n = n;
              v.m = m;
              v.j = j;
              v.x = x;
              v.y = y;
              v.point = p;
              v.distance = *dev;
              v.bound = bound;
              v.geodesic = detail::greedy_geodesic(s, b, x, p);
              Segment tail = detail::greedy_geodesic(s, b, p, y);
              v.geodesic.points.insert(v.geodesic.points.end(),
                                       tail.points.begin() + 1,
                                       tail.points.end());
              res.ok = false;
              res.violation = std::move(v);
              return res;
            }
          }
        }
  return res;
}

// Certificate-driven variant: the window must be quasi-algebraic of the
// certificate's type, and the bound is the certificate's C(c).
inline FellowTravellerResult check_fellow_traveller(
    const GeneratingSet& s, const LineWindow& w,
    const QuasiConvexityCertificate& cert, i64 c,
    const SearchLimits& limits = {}) {
  auto qt = quasi_type(s.group(), w);
  if (!qt.quasi_algebraic || qt.type != cert.type_elem.free)
    throw std::invalid_argument(
        "check_fellow_traveller: window is not quasi-algebraic of the "
        "certificate's type");
  return check_fellow_traveller_bound(s, w, cert.closeness_bound(c), c,
                                      limits);
}

}  // namespace cayley
