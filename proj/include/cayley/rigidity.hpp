#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cayley/certificates.hpp"
#include "cayley/isomorphism.hpp"

namespace cayley {

using ElementMap = std::function<GroupElement(const GroupElement&)>;

inline ElementMap translation_map(const GroupSpec& g, const GroupElement& z) {
  GroupElement zz = g.canonical(z.free, z.torsion);
  return [g, zz](const GroupElement& e) { return g.add(e, zz); };
}

inline ElementMap negation_map(const GroupSpec& g) {
  return [g](const GroupElement& e) { return g.neg(e); };
}

// Flip at position n on Z x Z/2: (x, y) -> (x, 1 - y) iff x == n.  A graph
// automorphism of the Cayley graph over {±(1,0), ±(1,1)} that is not
// induced by any affine map of the group.
inline ElementMap flip_map(i64 n) {
  GroupSpec g = make_group(1, {2});
  return [g, n](const GroupElement& e) {
    if (!g.conforms(e))
      throw std::invalid_argument("flip_map: element not in Z x Z/2");
    GroupElement r = e;
    if (r.free[0] == n) r.torsion[0] = 1 - r.torsion[0];
    return r;
  };
}

// Checks that phi preserves adjacency in both directions on every vertex
// pair of the radius-r ball.  Adjacency of arbitrary elements is algebraic
// (u ~ v iff v - u is a generator), so images never escape the verified
// region.
inline bool verify_graph_automorphism(const ElementMap& phi,
                                      const GeneratingSet& s, int radius,
                                      const SearchLimits& limits = {}) {
  const GroupSpec& g = s.group();
  const MetricBall b = ball(s, radius, limits);
  std::vector<GroupElement> image;
  image.reserve(b.size());
  for (const auto& v : b.vertices()) image.push_back(phi(v));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      const bool e = s.contains(g.sub(b.vertex(j), b.vertex(i)));
      const bool fe = s.contains(g.sub(image[j], image[i]));
      if (e != fe) return false;
    }
  return true;
}

// Free coordinates in [-width, width]^rank crossed with every torsion
// residue.
inline std::vector<GroupElement> sample_window(const GroupSpec& g, int width) {
  std::vector<GroupElement> out;
  std::vector<i64> free(g.rank(), -width);
  auto tors = g.torsion_elements();
  while (true) {
    for (const auto& t : tors)
      out.push_back(GroupElement{free, t.torsion});
    int i = g.rank() - 1;
    while (i >= 0 && ++free[i] > width) free[i--] = -width;
    if (i < 0) break;
  }
  return out;
}

struct InducedMapReport {
  bool window_sufficient = true;
  // pi(phi(x + t)) == pi(phi(x)) for torsion t: the free map is defined on
  // torsion cosets.
  bool well_defined = true;
  std::optional<std::pair<GroupElement, GroupElement>> coset_witness;
  // psi(x) = pi(phi(x)) - pi(phi(0)) is additive where sampled.
  bool additive = true;
  std::optional<std::pair<GroupElement, GroupElement>> additivity_witness;
  // psi agrees with its matrix of basis images on the whole sample box.
  bool matches_linear_part = true;
  std::optional<GroupElement> linearity_witness;
  bool square = true;
  std::vector<std::vector<i64>> linear_part;  // column i = psi(e_i)
  i64 det = 1;
  bool unimodular = true;

  bool affine() const {
    return window_sufficient && well_defined && additive &&
           matches_linear_part && square && unimodular;
  }
};

namespace detail {

inline i64 int_det(std::vector<std::vector<i64>> m) {
  const int n = static_cast<int>(m.size());
  i64 det = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c] != 0 && (p < 0 || std::abs(m[r][c]) < std::abs(m[p][c])))
        p = r;
    if (p < 0) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    for (int r = c + 1; r < n; ++r)
      while (m[r][c] != 0) {
        i64 q = m[r][c] / m[c][c];
        for (int k = c; k < n; ++k) m[r][k] -= q * m[c][k];
        if (m[r][c] != 0) {
          std::swap(m[r], m[c]);
          det = -det;
        }
      }
    det *= m[c][c];
  }
  return det;
}

}  // namespace detail

// Tests whether the vertex map phi : dom -> cod descends to an affine
// isomorphism of the torsion-free quotients over the sampled box:
// well-definedness on torsion cosets, additivity of
// psi(x) = pi(phi(x)) - pi(phi(0)), agreement with the basis-image matrix,
// and unimodularity of that matrix.
inline InducedMapReport induced_free_map(const ElementMap& phi,
                                         const GroupSpec& dom,
                                         const GroupSpec& cod, int width) {
  InducedMapReport rep;
  if (width < 1 && dom.rank() > 0) {
    rep.window_sufficient = false;
    return rep;
  }

  const auto window = sample_window(dom, width);
  auto pi_phi = [&](const GroupElement& x) {
    return cod.torsion_project(phi(x));
  };
  const std::vector<i64> base = pi_phi(dom.identity());
  auto psi = [&](const GroupElement& x) {
    std::vector<i64> v = pi_phi(x);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= base[i];
    return v;
  };

  const auto tors = dom.torsion_elements();
  for (const auto& x : window) {
    const auto px = pi_phi(x);
    for (const auto& t : tors) {
      GroupElement xt = dom.add(x, t);
      if (pi_phi(xt) != px) {
        rep.well_defined = false;
        rep.coset_witness = std::make_pair(x, xt);
        break;
      }
    }
    if (!rep.well_defined) break;
  }

  // psi on free coordinates only; torsion parts do not move psi once
  // well-definedness holds, and pairs are sampled over the free box.
  std::vector<GroupElement> box;
  for (const auto& x : window)
    if (std::all_of(x.torsion.begin(), x.torsion.end(),
                    [](i64 v) { return v == 0; }))
      box.push_back(x);

  std::unordered_map<GroupElement, std::vector<i64>, ElementHash> cache;
  for (const auto& x : box) cache.emplace(x, psi(x));

  for (const auto& x : box) {
    if (!rep.additive) break;
    for (const auto& y : box) {
      GroupElement sum = dom.add(x, y);
      auto it = cache.find(sum);
      if (it == cache.end()) continue;  // sum outside the box
      std::vector<i64> expect = cache[x];
      const auto& py = cache[y];
      for (std::size_t i = 0; i < expect.size(); ++i) expect[i] += py[i];
      if (it->second != expect) {
        rep.additive = false;
        rep.additivity_witness = std::make_pair(x, y);
        break;
      }
    }
  }

  rep.square = dom.rank() == cod.rank();
  if (rep.square && dom.rank() > 0) {
    rep.linear_part.assign(cod.rank(), std::vector<i64>(dom.rank(), 0));
    for (int i = 0; i < dom.rank(); ++i) {
      GroupElement ei = dom.identity();
      ei.free[i] = 1;
      auto col = psi(ei);
      for (int r = 0; r < cod.rank(); ++r) rep.linear_part[r][i] = col[r];
    }
    for (const auto& x : box) {
      std::vector<i64> expect(cod.rank(), 0);
      for (int r = 0; r < cod.rank(); ++r)
        for (int i = 0; i < dom.rank(); ++i)
          expect[r] += rep.linear_part[r][i] * x.free[i];
      if (cache[x] != expect) {
        rep.matches_linear_part = false;
        rep.linearity_witness = x;
        break;
      }
    }
    rep.det = detail::int_det(rep.linear_part);
    rep.unimodular = rep.det == 1 || rep.det == -1;
  } else if (!rep.square) {
    rep.unimodular = false;
  }
  return rep;
}

struct GroupAffinityReport {
  bool additive = true;
  std::optional<std::pair<GroupElement, GroupElement>> witness;
  // psi values at the witness, when present: psi(x+y) vs psi(x) + psi(y).
  std::optional<GroupElement> got, expected;
};

// Additivity of psi(x) = phi(x) - phi(0) on the whole group (not just the
// torsion-free quotient), sampled over the box window.
inline GroupAffinityReport group_affinity(const ElementMap& phi,
                                          const GroupSpec& dom,
                                          const GroupSpec& cod, int width) {
  GroupAffinityReport rep;
  const auto window = sample_window(dom, width);
  const GroupElement base = phi(dom.identity());
  auto psi = [&](const GroupElement& x) { return cod.sub(phi(x), base); };

  std::unordered_map<GroupElement, GroupElement, ElementHash> cache;
  for (const auto& x : window) cache.emplace(x, psi(x));
  for (const auto& x : window) {
    for (const auto& y : window) {
      GroupElement sum = dom.add(x, y);
      auto it = cache.find(sum);
      if (it == cache.end()) continue;
      GroupElement expect = cod.add(cache[x], cache[y]);
      if (!(it->second == expect)) {
        rep.additive = false;
        rep.witness = std::make_pair(x, y);
        rep.got = it->second;
        rep.expected = expect;
        return rep;
      }
    }
  }
  return rep;
}

struct QuasiTypeTransportReport {
  bool all_paths = true;  // every image window is a path over the codomain set
  int non_path_line = -1;
  bool all_quasi_algebraic = true;
  int offending_line = -1;
  bool types_agree = true;
  std::pair<int, int> disagreement{-1, -1};
  std::vector<std::vector<i64>> image_types;

  bool ok() const { return all_paths && all_quasi_algebraic && types_agree; }
};

// Applies an isomorphism pointwise to a family of parallel quasi-algebraic
// windows and reports whether the images are quasi-algebraic of one common
// quasi-type.  Failure modes are kept separate: an image that is not even a
// path, an image path that is not quasi-algebraic, and a quasi-type
// disagreement between two images.
inline QuasiTypeTransportReport image_quasi_type_consistency(
    const ElementMap& phi, const GeneratingSet& codomain,
    const std::vector<LineWindow>& lines) {
  const GroupSpec& cg = codomain.group();
  QuasiTypeTransportReport rep;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::vector<GroupElement> pts;
    for (const auto& p : lines[li].points()) pts.push_back(phi(p));
    LineWindow image = LineWindow::unchecked(lines[li].a(), std::move(pts));
    for (const auto& st : window_steps(cg, image))
      if (!codomain.contains(st)) {
        rep.all_paths = false;
        if (rep.non_path_line < 0) rep.non_path_line = static_cast<int>(li);
      }
    auto qt = quasi_type(cg, image);
    if (!qt.quasi_algebraic) {
      rep.all_quasi_algebraic = false;
      if (rep.offending_line < 0) rep.offending_line = static_cast<int>(li);
      rep.image_types.emplace_back();
      continue;
    }
    rep.image_types.push_back(qt.type);
  }
  for (std::size_t i = 0; i + 1 < rep.image_types.size(); ++i)
    if (!rep.image_types[i].empty() && !rep.image_types[i + 1].empty() &&
        rep.image_types[i] != rep.image_types[i + 1]) {
      rep.types_agree = false;
      rep.disagreement = {static_cast<int>(i), static_cast<int>(i + 1)};
      break;
    }
  return rep;
}

struct CorollaryWitness {
  CorollaryWitness(GroupSpec g, GeneratingSet s)
      : source(std::move(g)), genset(std::move(s)) {}

  GroupSpec source;
  GeneratingSet genset;  // basis lifts plus all nonzero torsion elements
  int radius = 0;
  // Cylinder over the free ball: pairs (x, t) with |x|_1 <= radius, indexed
  // as x_index * |tors| + t_index, adjacency from the group structure.
  std::vector<GroupElement> cylinder_labels;
  SimpleGraph cylinder;
  // Box product of the free ball graph with the complete graph on the
  // torsion elements, built independently of the group structure.
  SimpleGraph product;
  VertexBijection bijection;  // cylinder -> product (index-aligned)
  GroupSpec cyclic_target;    // Z^rank x Z/|tors|
  ElementMap to_cyclic;       // (x, t) -> (x, index of t)
};

// Explicit isomorphism witness behind "same rank and torsion order implies
// isomorphic graphs": over the generating set consisting of the standard
// basis lifts and all nonzero torsion elements, the cylinder over the
// radius-r free ball is exactly the box product of that ball with a
// complete graph.  The two adjacency structures are built by different
// routes and the identity bijection is verified edge-preserving; a failure
// here would be a genuine falsification and throws.
inline CorollaryWitness build_corollary_witness(const GroupSpec& g, int radius,
                                                const SearchLimits& limits = {}) {
  std::vector<GroupElement> gens;
  for (int i = 0; i < g.rank(); ++i) {
    GroupElement e = g.identity();
    e.free[i] = 1;
    gens.push_back(e);
  }
  auto tors = g.torsion_elements();
  for (const auto& t : tors)
    if (!t.is_zero()) gens.push_back(t);

  CorollaryWitness wit(g, GeneratingSet(g, gens));
  wit.radius = radius;

  const GroupSpec free_spec = make_group(g.rank(), {});
  std::vector<GroupElement> free_gens;
  for (int i = 0; i < g.rank(); ++i) {
    GroupElement e = free_spec.identity();
    e.free[i] = 1;
    free_gens.push_back(e);
  }
  const MetricBall free_ball =
      ball(GeneratingSet(free_spec, free_gens), radius, limits);

  const int k = static_cast<int>(tors.size());
  wit.product = cartesian_product(to_simple_graph(free_ball), complete_graph(k));

  const int n = static_cast<int>(free_ball.size()) * k;
  wit.cylinder = SimpleGraph(n);
  for (std::size_t xi = 0; xi < free_ball.size(); ++xi)
    for (int ti = 0; ti < k; ++ti)
      wit.cylinder_labels.push_back(
          GroupElement{free_ball.vertex(static_cast<int>(xi)).free,
                       tors[ti].torsion});
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (wit.genset.contains(
              g.sub(wit.cylinder_labels[v], wit.cylinder_labels[u])))
        wit.cylinder.add_edge(u, v);

  wit.bijection.map.resize(n);
  for (int i = 0; i < n; ++i) wit.bijection.map[i] = i;
  if (!is_edge_preserving(wit.cylinder, wit.product, wit.bijection))
    throw std::logic_error(
        "build_corollary_witness: cylinder/product adjacency mismatch");

  wit.cyclic_target =
      make_group(g.rank(), k >= 2 ? std::vector<i64>{k} : std::vector<i64>{});
  std::unordered_map<GroupElement, i64, ElementHash> tindex;
  for (int ti = 0; ti < k; ++ti) {
    GroupElement t = g.identity();
    t.torsion = tors[ti].torsion;
    tindex.emplace(t, ti);
  }
  const GroupSpec src = g;
  const GroupSpec dst = wit.cyclic_target;
  wit.to_cyclic = [src, dst, tindex](const GroupElement& e) {
    GroupElement t = src.identity();
    t.torsion = e.torsion;
    auto it = tindex.find(t);
    if (it == tindex.end())
      throw std::invalid_argument("corollary map: element not in source group");
    std::vector<i64> tor;
    if (dst.torsion_count() == 1) tor.push_back(it->second);
    return dst.canonical(e.free, tor);
  };
  return wit;
}

struct ParityReport {
  int radius = 0;  // torsion diameter + 1
  i64 beta = 0;    // ball size at that radius
  int beta_parity = 0;
  i64 torsion_order = 0;
  i64 order_le_2 = 0;
  // beta(r) = |tors| = #{order <= 2} (mod 2) — all three must agree.
  bool agree = false;
};

// Detects the torsion parity from one ball size: beyond the torsion
// diameter, ball sizes carry the torsion order mod 2.
inline ParityReport torsion_parity(const GeneratingSet& s,
                                   const SearchLimits& limits = {}) {
  const GroupSpec& g = s.group();
  ParityReport rep;
  rep.radius = torsion_diameter(s, limits) + 1;
  rep.beta = growth_sequence(s, rep.radius, limits).back();
  rep.beta_parity = static_cast<int>(rep.beta % 2);
  rep.torsion_order = g.torsion_order();
  rep.order_le_2 = g.count_order_le_2();
  rep.agree = (rep.beta % 2 == rep.torsion_order % 2) &&
              (rep.torsion_order % 2 == rep.order_le_2 % 2);
  return rep;
}

struct RankEstimate {
  bool ok = false;
  int rank = -1;
  double slope = 0.0;
  std::string error;
};

// Least-squares fit of log beta(r) against log r over the top half of the
// radii, rounded to the nearest integer.  Finite groups saturate to slope 0.
inline RankEstimate rank_via_growth(const GeneratingSet& s, int r_max,
                                    const SearchLimits& limits = {}) {
  RankEstimate est;
  if (r_max < 4) {
    est.error = "radius too small for a growth fit";
    return est;
  }
  const auto beta = growth_sequence(s, r_max, limits);
  const int lo = std::max(1, r_max / 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int r = lo; r <= r_max; ++r) {
    const double x = std::log(static_cast<double>(r));
    const double y = std::log(static_cast<double>(beta[r]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0) {
    est.error = "degenerate fit window";
    return est;
  }
  est.slope = (n * sxy - sx * sy) / denom;
  est.rank = static_cast<int>(std::llround(est.slope));
  est.ok = true;
  return est;
}

}  // namespace cayley
