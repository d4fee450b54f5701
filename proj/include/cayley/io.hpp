#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "cayley/ball.hpp"
#include "cayley/certificates.hpp"
#include "cayley/graphs.hpp"
#include "cayley/isomorphism.hpp"
#include "cayley/lines.hpp"

namespace cayley {

using json = nlohmann::ordered_json;

inline void to_json(json& j, const GroupElement& e) {
  j = json{{"free", e.free}, {"torsion", e.torsion}};
}

inline void from_json(const json& j, GroupElement& e) {
  j.at("free").get_to(e.free);
  j.at("torsion").get_to(e.torsion);
}

inline json group_to_json(const GroupSpec& g) {
  return json{{"rank", g.rank()}, {"torsion", g.torsion_factors()}};
}

inline GroupSpec group_from_json(const json& j) {
  return make_group(j.at("rank").get<int>(),
                    j.at("torsion").get<std::vector<i64>>());
}

inline json segment_to_json(const Segment& seg) {
  json pts = json::array();
  for (const auto& p : seg.points) pts.push_back(p);
  return json{{"points", pts}};
}

inline json window_to_json(const LineWindow& w) {
  json pts = json::array();
  for (const auto& p : w.points()) pts.push_back(p);
  return json{{"a", w.a()}, {"b", w.b()}, {"points", pts}};
}

inline json certificate_to_json(const QuasiConvexityCertificate& cert) {
  json c;
  for (i64 v : {0, 1, 2})
    c[std::to_string(v)] = cert.closeness_bound(v);
  return json{{"type", cert.type_elem},
              {"mu_sq", {cert.mu_sq_num, cert.mu_sq_den}},
              {"C", c}};
}

// Canonical ball serialization: vertices reindexed by (distance, element),
// so the output is independent of traversal order.
inline json ball_to_json(const MetricBall& b) {
  const int n = static_cast<int>(b.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (b.dist(x) != b.dist(y)) return b.dist(x) < b.dist(y);
    return b.vertex(x) < b.vertex(y);
  });
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  json verts = json::array();
  json dist = json::array();
  for (int i = 0; i < n; ++i) {
    verts.push_back(b.vertex(order[i]));
    dist.push_back(b.dist(order[i]));
  }
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v : b.neighbors(u))
      if (u < v) {
        int a = pos[u], c = pos[v];
        edges.emplace_back(std::min(a, c), std::max(a, c));
      }
  std::sort(edges.begin(), edges.end());
  json je = json::array();
  for (auto [u, v] : edges) je.push_back({u, v});
  return json{{"radius", b.radius()},
              {"vertices", verts},
              {"dist", dist},
              {"edges", je}};
}

inline std::string element_label(const GroupElement& e) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (i64 v : e.free) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  for (i64 v : e.torsion) {
    if (!first) os << ',';
    os << '[' << v << ']';
    first = false;
  }
  os << ')';
  return os.str();
}

// Deterministic DOT rendering of a ball: vertices in canonical order with
// element labels, every vertex listed (isolated ones included), edges
// sorted.
inline std::string ball_to_dot(const MetricBall& b,
                               const std::string& name = "ball") {
  const int n = static_cast<int>(b.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (b.dist(x) != b.dist(y)) return b.dist(x) < b.dist(y);
    return b.vertex(x) < b.vertex(y);
  });
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int i = 0; i < n; ++i)
    os << "  v" << i << " [label=\"" << element_label(b.vertex(order[i]))
       << "\"];\n";
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v : b.neighbors(u))
      if (u < v)
        edges.emplace_back(std::min(pos[u], pos[v]), std::max(pos[u], pos[v]));
  std::sort(edges.begin(), edges.end());
  for (auto [u, v] : edges) os << "  v" << u << " -- v" << v << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string graph_to_dot(const SimpleGraph& g,
                                const std::string& name = "g") {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int i = 0; i < g.n; ++i) os << "  v" << i << ";\n";
  for (auto [u, v] : g.edges()) os << "  v" << u << " -- v" << v << ";\n";
  os << "}\n";
  return os.str();
}

// A found isomorphism with both vertex tables inlined, so the mapping is
// replayable without the original balls.
inline json bijection_to_json(const MetricBall& a, const MetricBall& b,
                              const VertexBijection& phi, i64 nodes) {
  json va = json::array(), vb = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) va.push_back(a.vertex(static_cast<int>(i)));
  for (std::size_t i = 0; i < b.size(); ++i) vb.push_back(b.vertex(static_cast<int>(i)));
  return json{{"found", true},
              {"nodes_explored", nodes},
              {"domain_vertices", va},
              {"codomain_vertices", vb},
              {"map", phi.map}};
}

inline json no_isomorphism_to_json(i64 nodes, bool exhausted) {
  return json{{"found", false},
              {"exhausted", exhausted},
              {"nodes_explored", nodes}};
}

}  // namespace cayley
