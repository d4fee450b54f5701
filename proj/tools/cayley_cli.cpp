// Command-line driver for word-metric balls, geodesics, convexity
// certificates, parity detection, and rigidity witnesses on finitely
// generated Abelian groups.
//
// Exit codes: 0 check passed / witness produced, 1 property violation
// (with a replayable counterexample), 2 resource limit, 64 configuration
// errors.  Output is byte-identical for identical configuration and seed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cayley/cayley.hpp"

namespace {

using cayley::ElementMap;
using cayley::GeneratingSet;
using cayley::GroupElement;
using cayley::GroupSpec;
using cayley::i64;
using cayley::json;
using cayley::LineWindow;
using cayley::make_group;
using cayley::SearchLimits;
using cayley::Segment;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------
// Mini-syntax parsing: groups as "rank,[f1,f2,...]", elements as
// parenthesized integer tuples with free coordinates first.

i64 parse_int(const std::string& s) {
  std::size_t pos = 0;
  i64 v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("not an integer: '" + s + "'");
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
    ++pos;
  if (pos != s.size()) throw ConfigError("not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<i64> parse_factor_list(const std::string& in) {
  std::string s = strip(in);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ConfigError("torsion factors must look like [2,4]: '" + in + "'");
  std::string body = strip(s.substr(1, s.size() - 2));
  std::vector<i64> factors;
  if (!body.empty())
    for (const auto& part : split(body, ',')) factors.push_back(parse_int(part));
  return factors;
}

GroupSpec parse_group(const std::string& in) {
  std::string s = strip(in);
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw ConfigError("group must look like \"rank,[factors]\": '" + in + "'");
  i64 rank = parse_int(s.substr(0, comma));
  auto factors = parse_factor_list(s.substr(comma + 1));
  if (rank < 0) throw ConfigError("rank must be non-negative");
  try {
    return make_group(static_cast<int>(rank), factors);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid group: ") + e.what());
  }
}

std::vector<std::vector<i64>> parse_tuples(const std::string& in) {
  std::vector<std::vector<i64>> out;
  std::size_t i = 0;
  while (i < in.size()) {
    if (std::isspace(static_cast<unsigned char>(in[i])) || in[i] == ',') {
      ++i;
      continue;
    }
    if (in[i] != '(')
      throw ConfigError("expected '(' in tuple list: '" + in + "'");
    auto close = in.find(')', i);
    if (close == std::string::npos)
      throw ConfigError("unbalanced parenthesis in '" + in + "'");
    std::string body = strip(in.substr(i + 1, close - i - 1));
    std::vector<i64> coords;
    if (!body.empty())
      for (const auto& part : split(body, ',')) coords.push_back(parse_int(part));
    out.push_back(std::move(coords));
    i = close + 1;
  }
  if (out.empty()) throw ConfigError("no tuples found in '" + in + "'");
  return out;
}

GroupElement tuple_element(const GroupSpec& g, const std::vector<i64>& coords) {
  const std::size_t need =
      static_cast<std::size_t>(g.rank()) +
      static_cast<std::size_t>(g.torsion_count());
  if (coords.size() != need) {
    std::ostringstream os;
    os << "tuple needs " << need << " coordinates (" << g.rank()
       << " free + " << g.torsion_count() << " torsion), got "
       << coords.size();
    throw ConfigError(os.str());
  }
  std::vector<i64> free(coords.begin(), coords.begin() + g.rank());
  std::vector<i64> tors(coords.begin() + g.rank(), coords.end());
  return g.canonical(free, tors);
}

std::vector<GroupElement> parse_elements(const GroupSpec& g,
                                         const std::string& in) {
  std::vector<GroupElement> out;
  for (const auto& t : parse_tuples(in)) out.push_back(tuple_element(g, t));
  return out;
}

GroupElement parse_element(const GroupSpec& g, const std::string& in) {
  auto tuples = parse_tuples(in);
  if (tuples.size() != 1)
    throw ConfigError("expected exactly one tuple in '" + in + "'");
  return tuple_element(g, tuples.front());
}

// ---------------------------------------------------------------------
// Config plumbing.

struct RunConfig {
  std::string command;
  json cfg;
};

template <class T>
T get_or(const json& cfg, const char* key, T def) {
  auto it = cfg.find(key);
  if (it == cfg.end() || it->is_null()) return def;
  return it->get<T>();
}

std::string require_str(const json& cfg, const char* key, const char* flag) {
  auto it = cfg.find(key);
  if (it == cfg.end() || it->is_null() || it->get<std::string>().empty())
    throw ConfigError(std::string("missing required option ") + flag);
  return it->get<std::string>();
}

SearchLimits limits_from(const json& cfg) {
  SearchLimits l;
  l.max_vertices = get_or<std::size_t>(cfg, "max_vertices", l.max_vertices);
  l.max_geodesics = get_or<std::size_t>(cfg, "max_geodesics", l.max_geodesics);
  if (l.max_vertices == 0 || l.max_geodesics == 0)
    throw ConfigError("resource caps must be positive");
  return l;
}

std::string group_text(const GroupSpec& g) {
  std::ostringstream os;
  os << g.rank() << ",[";
  const auto& f = g.torsion_factors();
  for (std::size_t i = 0; i < f.size(); ++i)
    os << (i ? "," : "") << f[i];
  os << ']';
  return os.str();
}

std::string segment_text(const Segment& seg) {
  std::ostringstream os;
  for (std::size_t i = 0; i < seg.points.size(); ++i)
    os << (i ? " " : "") << cayley::element_label(seg.points[i]);
  return os.str();
}

// Emits either the machine document (json format) or decorated text with a
// trailing replay document on failures.  The json document always includes
// command + config, so saving stdout yields a --replay input directly.
int emit(const RunConfig& rc, const std::string& format,
         const std::string& text_out, json result, int code,
         const std::optional<json>& counterexample = std::nullopt) {
  if (format == "json") {
    json doc{{"command", rc.command}, {"config", rc.cfg},
             {"result", std::move(result)}};
    if (counterexample) doc["counterexample"] = *counterexample;
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << text_out;
    if (counterexample) {
      json doc{{"command", rc.command}, {"config", rc.cfg},
               {"counterexample", *counterexample}};
      std::cout << "replay document:\n" << doc.dump(2) << '\n';
    }
  }
  return code;
}

// ---------------------------------------------------------------------
// Subcommands.

int run_ball(const RunConfig& rc) {
  const json& cfg = rc.cfg;
  GroupSpec g = parse_group(require_str(cfg, "group", "--group"));
  GeneratingSet s(g, parse_elements(g, require_str(cfg, "gens", "--gens")));
  const int radius = get_or<int>(cfg, "radius", 3);
  if (radius < 0) throw ConfigError("--radius must be non-negative");
  const auto limits = limits_from(cfg);
  const std::string format = get_or<std::string>(cfg, "format", "text");

  auto b = cayley::ball(s, radius, limits);
  if (format == "dot") {
    std::cout << cayley::ball_to_dot(b);
    return 0;
  }

  std::vector<i64> beta;
  for (int r = 0; r <= radius; ++r) beta.push_back(b.shell_prefix_end(r));
  const i64 tdiam = cayley::torsion_diameter(s, limits);

  std::ostringstream text;
  text << "group: " << group_text(g) << '\n' << "generators:";
  for (const auto& e : s.elements())
    text << ' ' << cayley::element_label(e);
  text << '\n' << "radius: " << radius << '\n' << "beta:";
  for (i64 v : beta) text << ' ' << v;
  text << '\n' << "shells:";
  for (auto v : b.shell_sizes()) text << ' ' << v;
  text << '\n' << "torsion diameter: " << tdiam << '\n';

  json result{{"group", cayley::group_to_json(g)},
              {"beta", beta},
              {"shells", b.shell_sizes()},
              {"torsion_diameter", tdiam},
              {"ball", cayley::ball_to_json(b)}};
  return emit(rc, format, text.str(), std::move(result), 0);
}

int run_parity(const RunConfig& rc) {
  const json& cfg = rc.cfg;
  GroupSpec g = parse_group(require_str(cfg, "group", "--group"));
  GeneratingSet s(g, parse_elements(g, require_str(cfg, "gens", "--gens")));
  const auto limits = limits_from(cfg);
  const std::string format = get_or<std::string>(cfg, "format", "text");

  auto rep = cayley::torsion_parity(s, limits);

  std::ostringstream text;
  text << "radius: " << rep.radius << '\n' << "beta: " << rep.beta << '\n'
       << "beta parity: " << (rep.beta_parity ? "odd" : "even") << '\n'
       << "torsion order: " << rep.torsion_order << '\n'
       << "order-<=2 count: " << rep.order_le_2 << '\n'
       << "parity agreement: " << (rep.agree ? "PASS" : "FAIL") << '\n';

  json result{{"radius", rep.radius},
              {"beta", rep.beta},
              {"beta_parity", rep.beta_parity},
              {"torsion_order", rep.torsion_order},
              {"order_le_2", rep.order_le_2},
              {"agree", rep.agree}};
  if (rep.agree) return emit(rc, format, text.str(), std::move(result), 0);
  json cx{{"beta", rep.beta},
          {"torsion_order", rep.torsion_order},
          {"order_le_2", rep.order_le_2}};
  return emit(rc, format, text.str(), std::move(result), 1, cx);
}

int run_convexity(const RunConfig& rc) {
  const json& cfg = rc.cfg;
  GroupSpec g = parse_group(require_str(cfg, "group", "--group"));
  GeneratingSet s(g, parse_elements(g, require_str(cfg, "gens", "--gens")));
  GroupElement type = parse_element(g, require_str(cfg, "type", "--type"));
  const int window = get_or<int>(cfg, "window", 4);
  if (window < 1) throw ConfigError("--window must be at least 1");
  const i64 closeness = get_or<i64>(cfg, "closeness", -1);
  const i64 adhoc = get_or<i64>(cfg, "adhoc_C", -1);
  const bool transfer = get_or<bool>(cfg, "transfer", false);
  const auto limits = limits_from(cfg);
  const std::string format = get_or<std::string>(cfg, "format", "text");

  if (!s.contains(type))
    throw ConfigError("--type must be one of the generators");

  std::ostringstream text;
  text << "line: type " << cayley::element_label(type) << " through "
       << cayley::element_label(g.identity()) << " on [" << -window << ","
       << window << "]\n";

  if (transfer) {
    auto rep = cayley::parallel_geodesic_transfer(
        s, type, -window, window, get_or<std::size_t>(cfg, "samples", 4),
        get_or<std::uint64_t>(cfg, "seed", 0), get_or<int>(cfg, "threads", 1),
        limits);
    text << "transfer: " << rep.lines_checked << " lines checked, "
         << rep.geodesic_lines << " geodesic, uniform: "
         << (rep.uniform ? "yes" : "no") << '\n'
         << "reference line geodesic: "
         << (rep.reference_geodesic ? "yes" : "no") << '\n';
    json result{{"lines_checked", rep.lines_checked},
                {"geodesic_lines", rep.geodesic_lines},
                {"uniform", rep.uniform},
                {"reference_geodesic", rep.reference_geodesic}};
    if (rep.uniform) {
      text << "TRANSFER PASS\n";
      return emit(rc, format, text.str(), std::move(result), 0);
    }
    text << "TRANSFER FAIL: geodesicity not uniform across parallels\n";
    json cx;
    if (rep.geodesic_example)
      cx["geodesic_line"] = cayley::window_to_json(*rep.geodesic_example);
    if (rep.non_geodesic_example)
      cx["non_geodesic_line"] =
          cayley::window_to_json(*rep.non_geodesic_example);
    return emit(rc, format, text.str(), std::move(result), 1, cx);
  }

  auto line = cayley::algebraic_line(s, g.identity(), type, -window, window);

  if (closeness >= 0 || adhoc >= 0) {
    const i64 c = closeness >= 0 ? closeness : 0;
    i64 bound = adhoc;
    json result;
    if (adhoc >= 0) {
      text << "ad-hoc fellow-traveller bound C = " << adhoc << ", c = " << c
           << '\n';
      result["adhoc_C"] = adhoc;
    } else {
      auto cert = cayley::quasiconvexity_certificate(s, type, limits);
      bound = cert.closeness_bound(c);
      text << "certificate: type " << cayley::element_label(cert.type_elem)
           << ", mu^2 = " << cert.mu_sq_num << '/' << cert.mu_sq_den
           << ", K(" << c << ") = " << cert.k_bound(c) << ", C(" << c
           << ") = " << bound << '\n';
      result["certificate"] = cayley::certificate_to_json(cert);
    }
    result["closeness"] = c;
    result["bound"] = bound;
    auto res = cayley::check_fellow_traveller_bound(s, line, bound, c, limits);
    result["points_checked"] = res.points_checked;
    result["ok"] = res.ok;
    if (res.ok) {
      text << "fellow traveller within " << bound << ": PASS ("
           << res.points_checked << " points)\n";
      return emit(rc, format, text.str(), std::move(result), 0);
    }
    const auto& v = *res.violation;
    text << "VIOLATION at n=" << v.n << ", m=" << v.m << ", j=" << v.j
         << ": d(point, line) = " << v.distance << " > " << v.bound << '\n'
         << "point: " << cayley::element_label(v.point) << '\n'
         << "geodesic: " << segment_text(v.geodesic) << '\n';
    json cx{{"n", v.n},
            {"m", v.m},
            {"j", v.j},
            {"x", v.x},
            {"y", v.y},
            {"point", v.point},
            {"distance", v.distance},
            {"bound", v.bound},
            {"geodesic", cayley::segment_to_json(v.geodesic)}};
    return emit(rc, format, text.str(), std::move(result), 1, cx);
  }

  // Plain convexity: the window must be geodesic, then uniquely geodesic.
  if (!cayley::is_geodesic_window(s, line, limits)) {
    auto b = cayley::ball(s, line.length(), limits);
    int wj = 0, wk = 0, wd = 0;
    for (int j = line.a(); j <= line.b() && wd == 0; ++j)
      for (int k = j + 1; k <= line.b(); ++k) {
        auto d = b.distance_to_origin(g.sub(line.at(k), line.at(j)));
        if (d && *d != k - j) {
          wj = j;
          wk = k;
          wd = *d;
          break;
        }
      }
    text << "geodesic window: no (d(gamma_" << wj << ", gamma_" << wk
         << ") = " << wd << " != " << wk - wj << ")\n" << "NOT GEODESIC\n";
    json result{{"geodesic_window", false}};
    json cx{{"j", wj}, {"k", wk}, {"distance", wd}, {"expected", wk - wj}};
    return emit(rc, format, text.str(), std::move(result), 1, cx);
  }

  text << "geodesic window: yes\n";
  auto res = cayley::is_convex_on_window(s, line, limits);
  json result{{"geodesic_window", true}, {"convex", res.convex}};
  if (res.convex) {
    text << "CONVEX\n";
    return emit(rc, format, text.str(), std::move(result), 0);
  }
  text << "NOT CONVEX at pair n=" << res.n << ", m=" << res.m << '\n'
       << "second geodesic: " << segment_text(*res.second_geodesic) << '\n';
  json cx{{"n", res.n},
          {"m", res.m},
          {"second_geodesic", cayley::segment_to_json(*res.second_geodesic)}};
  return emit(rc, format, text.str(), std::move(result), 1, cx);
}

int run_geodesics(const RunConfig& rc) {
  const json& cfg = rc.cfg;
  GroupSpec g = parse_group(require_str(cfg, "group", "--group"));
  GeneratingSet s(g, parse_elements(g, require_str(cfg, "gens", "--gens")));
  const std::string from_str = get_or<std::string>(cfg, "from", "");
  GroupElement from =
      from_str.empty() ? g.identity() : parse_element(g, from_str);
  GroupElement to = parse_element(g, require_str(cfg, "to", "--to"));
  const auto limits = limits_from(cfg);
  const std::string format = get_or<std::string>(cfg, "format", "text");

  const int dist = cayley::distance(s, from, to, limits);
  const i64 count = cayley::count_geodesics(s, from, to, limits);
  auto geos = cayley::enumerate_geodesics(s, from, to, limits);

  std::ostringstream text;
  text << "distance: " << dist << '\n' << "count: " << count << '\n';
  for (const auto& seg : geos) text << "geodesic: " << segment_text(seg) << '\n';

  json jg = json::array();
  for (const auto& seg : geos) jg.push_back(cayley::segment_to_json(seg));
  json result{{"distance", dist}, {"count", count}, {"geodesics", jg}};
  return emit(rc, format, text.str(), std::move(result), 0);
}

int run_construct_pair(const RunConfig& rc) {
  const json& cfg = rc.cfg;
  const int rank = get_or<int>(cfg, "rank", 1);
  if (rank < 0) throw ConfigError("--rank must be non-negative");
  const int radius = get_or<int>(cfg, "radius", 3);
  if (radius < 0) throw ConfigError("--radius must be non-negative");
  const auto limits = limits_from(cfg);

  std::vector<i64> factors;
  const std::string torsion = get_or<std::string>(cfg, "torsion", "");
  if (!torsion.empty()) {
    factors = parse_factor_list(torsion);
  } else {
    const i64 order = get_or<i64>(cfg, "torsion_order", 2);
    if (order < 1) throw ConfigError("--torsion-order must be at least 1");
    if (order > 1) factors.push_back(order);
  }
  GroupSpec g = make_group(rank, factors);

  auto wit = cayley::build_corollary_witness(g, radius, limits);
  const bool preserved = cayley::is_edge_preserving(wit.cylinder, wit.product,
                                                    wit.bijection);

  // Independent spot check of the cyclic relabeling on a sampled window.
  bool relabel_ok = true;
  {
    const GroupSpec& t = wit.cyclic_target;
    std::vector<GroupElement> tg;
    for (int i = 0; i < t.rank(); ++i) {
      GroupElement e = t.identity();
      e.free[i] = 1;
      tg.push_back(e);
    }
    for (const auto& tt : t.torsion_elements())
      if (!tt.is_zero()) tg.push_back(tt);
    GeneratingSet target_set(t, tg);
    auto window = cayley::sample_window(g, 2);
    for (std::size_t i = 0; i < window.size() && relabel_ok; ++i)
      for (std::size_t j = i + 1; j < window.size(); ++j) {
        bool e = wit.genset.contains(g.sub(window[j], window[i]));
        bool fe = target_set.contains(
            t.sub(wit.to_cyclic(window[j]), wit.to_cyclic(window[i])));
        if (e != fe) {
          relabel_ok = false;
          break;
        }
      }
  }

  json labels = json::array();
  for (const auto& e : wit.cylinder_labels)
    labels.push_back(cayley::element_label(e));
  json doc{{"command", rc.command},
           {"config", rc.cfg},
           {"result",
            json{{"group", cayley::group_to_json(g)},
                 {"radius", wit.radius},
                 {"cylinder",
                  json{{"vertices", wit.cylinder.n},
                       {"edges", wit.cylinder.edge_count()},
                       {"labels", labels}}},
                 {"product_equal", wit.cylinder == wit.product},
                 {"bijection_edge_preserving", preserved},
                 {"cyclic_target", cayley::group_to_json(wit.cyclic_target)},
                 {"cyclic_relabeling_adjacency_preserving", relabel_ok}}}};
  std::cout << doc.dump(2) << '\n';
  return preserved && relabel_ok ? 0 : 1;
}

ElementMap parse_map_spec(const GroupSpec& g, const std::string& spec) {
  if (spec == "negate") return cayley::negation_map(g);
  if (spec.rfind("translate:", 0) == 0)
    return cayley::translation_map(g, parse_element(g, spec.substr(10)));
  if (spec.rfind("flip:", 0) == 0) {
    if (!(g == make_group(1, {2})))
      throw ConfigError("flip maps require --group \"1,[2]\"");
    return cayley::flip_map(parse_int(spec.substr(5)));
  }
  throw ConfigError(
      "unknown --map (use negate, translate:(tuple), or flip:N): '" + spec +
      "'");
}

std::string matrix_text(const std::vector<std::vector<i64>>& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < m.size(); ++r) {
    os << (r ? "," : "") << '[';
    for (std::size_t c = 0; c < m[r].size(); ++c)
      os << (c ? "," : "") << m[r][c];
    os << ']';
  }
  os << ']';
  return os.str();
}

int run_verify_rigidity(const RunConfig& rc) {
  const json& cfg = rc.cfg;
  GroupSpec g = parse_group(require_str(cfg, "group", "--group"));
  GeneratingSet s(g, parse_elements(g, require_str(cfg, "gens", "--gens")));
  ElementMap phi = parse_map_spec(g, require_str(cfg, "map", "--map"));
  const int radius = get_or<int>(cfg, "radius", 3);
  const int width = get_or<int>(cfg, "width", 3);
  if (radius < 0 || width < 0)
    throw ConfigError("--radius and --width must be non-negative");
  const auto limits = limits_from(cfg);
  const std::string format = get_or<std::string>(cfg, "format", "text");

  const bool autom = cayley::verify_graph_automorphism(phi, s, radius, limits);
  auto rep = cayley::induced_free_map(phi, g, g, width);
  auto ga = cayley::group_affinity(phi, g, g, width);

  std::ostringstream text;
  text << "graph automorphism on radius-" << radius << " ball: "
       << (autom ? "PASS" : "FAIL") << '\n';
  text << "induced free map: "
       << (rep.affine() ? "affine PASS" : "affine FAIL");
  if (rep.square && !rep.linear_part.empty())
    text << " (linear part " << matrix_text(rep.linear_part) << ", det "
         << rep.det << ")";
  text << '\n';
  if (ga.additive) {
    text << "group-level additivity: holds\n";
  } else {
    text << "group-level additivity: FAILS with witness psi("
         << cayley::element_label(g.add(ga.witness->first, ga.witness->second))
         << ") = " << cayley::element_label(*ga.got) << " != "
         << cayley::element_label(*ga.expected) << '\n';
  }

  const bool pass = autom && rep.well_defined && rep.affine();
  text << "VERDICT: " << (pass ? "PASS" : "FAIL") << '\n';

  json result{{"automorphism", autom},
              {"induced",
               json{{"well_defined", rep.well_defined},
                    {"additive", rep.additive},
                    {"matches_linear_part", rep.matches_linear_part},
                    {"linear_part", rep.linear_part},
                    {"det", rep.det},
                    {"unimodular", rep.unimodular},
                    {"affine", rep.affine()}}},
              {"group_additive", ga.additive}};
  if (pass) return emit(rc, format, text.str(), std::move(result), 0);
  json cx{{"automorphism", autom}, {"induced_affine", rep.affine()}};
  if (rep.coset_witness) {
    cx["coset_witness"] =
        json::array({rep.coset_witness->first, rep.coset_witness->second});
  }
  if (rep.additivity_witness) {
    cx["additivity_witness"] = json::array(
        {rep.additivity_witness->first, rep.additivity_witness->second});
  }
  return emit(rc, format, text.str(), std::move(result), 1, cx);
}

int run_flip_demo(const RunConfig& rc) {
  const json& cfg = rc.cfg;
  const std::string format = get_or<std::string>(cfg, "format", "text");
  GroupSpec g = make_group(1, {2});
  GeneratingSet s(g, {g.canonical({1}, {0}), g.canonical({1}, {1})});
  auto phi = cayley::flip_map(0);

  const bool autom = cayley::verify_graph_automorphism(phi, s, 4);
  auto rep = cayley::induced_free_map(phi, g, g, 3);
  auto ga = cayley::group_affinity(phi, g, g, 3);

  GroupElement base = phi(g.identity());
  auto psi = [&](const GroupElement& e) { return g.sub(phi(e), base); };
  GroupElement got = psi(g.canonical({2}, {0}));
  GroupElement expected =
      g.add(psi(g.canonical({1}, {0})), psi(g.canonical({1}, {0})));

  std::ostringstream text;
  text << "flip at 0 on Z x Z/2 over";
  for (const auto& e : s.elements()) text << ' ' << cayley::element_label(e);
  text << '\n';
  text << "graph automorphism on radius-4 ball: " << (autom ? "PASS" : "FAIL")
       << '\n';
  text << "induced quotient map: linear part "
       << matrix_text(rep.linear_part) << ", affine "
       << (rep.affine() ? "PASS" : "FAIL") << '\n';
  text << "group-level additivity: " << (ga.additive ? "holds" : "FAILS")
       << " with witness psi((2,[0])) = " << cayley::element_label(got)
       << " != " << cayley::element_label(expected)
       << " = psi((1,[0])) + psi((1,[0]))" << '\n';

  const bool ok = autom && rep.affine() && !ga.additive &&
                  got == g.canonical({2}, {1}) &&
                  expected == g.canonical({2}, {0});
  json result{{"automorphism", autom},
              {"induced_affine", rep.affine()},
              {"group_additive", ga.additive},
              {"witness",
               json{{"psi_2_0", got},
                    {"psi_1_0_doubled", expected}}}};
  return emit(rc, format, text.str(), std::move(result), ok ? 0 : 1);
}

int run_command(const RunConfig& rc) {
  try {
    if (rc.command == "ball") return run_ball(rc);
    if (rc.command == "parity") return run_parity(rc);
    if (rc.command == "convexity") return run_convexity(rc);
    if (rc.command == "geodesics") return run_geodesics(rc);
    if (rc.command == "construct-pair") return run_construct_pair(rc);
    if (rc.command == "verify-rigidity") return run_verify_rigidity(rc);
    if (rc.command == "flip-demo") return run_flip_demo(rc);
    std::cerr << "unknown command: " << rc.command << '\n';
    return 64;
  } catch (const cayley::resource_limit_error& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 2;
  } catch (const cayley::geodesic_cap_error& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 64;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 64;
  } catch (const std::logic_error& e) {
    std::cerr << "falsification: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word metrics, geodesics, and rigidity witnesses on finitely "
               "generated Abelian groups"};
  app.require_subcommand(0, 1);

  std::string replay_file;
  app.add_option("--replay", replay_file,
                 "re-run the check from a serialized counterexample document");

  struct Flags {
    std::string group, gens, type, from, to, map, torsion;
    std::string format = "text";
    int radius = 3, window = 4, width = 3, threads = 1, rank = 1;
    i64 closeness = -1, adhoc_C = -1, torsion_order = 2;
    std::uint64_t seed = 0;
    std::size_t max_vertices = SearchLimits{}.max_vertices;
    std::size_t max_geodesics = SearchLimits{}.max_geodesics;
    std::size_t samples = 4;
    bool transfer = false;
  };
  auto fl = std::make_shared<Flags>();
  std::optional<RunConfig> pending;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", fl->format, "output format")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    sub->add_option("--max-vertices", fl->max_vertices, "BFS vertex cap");
    sub->add_option("--max-geodesics", fl->max_geodesics,
                    "geodesic enumeration cap");
  };
  auto common_cfg = [&]() {
    return json{{"format", fl->format},
                {"max_vertices", fl->max_vertices},
                {"max_geodesics", fl->max_geodesics}};
  };

  auto* ball = app.add_subcommand("ball", "word-metric ball summary");
  ball->add_option("--group", fl->group, "group as \"rank,[factors]\"")
      ->required();
  ball->add_option("--gens", fl->gens, "generators as \"(..),(..)\"")
      ->required();
  ball->add_option("--radius", fl->radius, "ball radius");
  add_common(ball);
  ball->callback([&] {
    json cfg = common_cfg();
    cfg["group"] = fl->group;
    cfg["gens"] = fl->gens;
    cfg["radius"] = fl->radius;
    pending = RunConfig{"ball", std::move(cfg)};
  });

  auto* parity = app.add_subcommand("parity", "torsion parity detector");
  parity->add_option("--group", fl->group, "group as \"rank,[factors]\"")
      ->required();
  parity->add_option("--gens", fl->gens, "generators")->required();
  add_common(parity);
  parity->callback([&] {
    json cfg = common_cfg();
    cfg["group"] = fl->group;
    cfg["gens"] = fl->gens;
    pending = RunConfig{"parity", std::move(cfg)};
  });

  auto* conv = app.add_subcommand(
      "convexity", "convexity / quasi-convexity of an algebraic line");
  conv->add_option("--group", fl->group, "group as \"rank,[factors]\"")
      ->required();
  conv->add_option("--gens", fl->gens, "generators")->required();
  conv->add_option("--type", fl->type, "line type (a generator tuple)")
      ->required();
  conv->add_option("--window", fl->window, "half-width of the line window");
  conv->add_option("--closeness", fl->closeness,
                   "check the certified fellow-traveller bound C(c)");
  conv->add_option("--adhoc-C", fl->adhoc_C,
                   "check an explicit fellow-traveller bound instead");
  conv->add_flag("--transfer", fl->transfer,
                 "sample parallel lines of the same quasi-type");
  conv->add_option("--samples", fl->samples, "base points for --transfer");
  conv->add_option("--seed", fl->seed, "sampling seed for --transfer");
  conv->add_option("--threads", fl->threads, "worker threads for --transfer");
  add_common(conv);
  conv->callback([&] {
    json cfg = common_cfg();
    cfg["group"] = fl->group;
    cfg["gens"] = fl->gens;
    cfg["type"] = fl->type;
    cfg["window"] = fl->window;
    cfg["closeness"] = fl->closeness;
    cfg["adhoc_C"] = fl->adhoc_C;
    cfg["transfer"] = fl->transfer;
    cfg["samples"] = fl->samples;
    cfg["seed"] = fl->seed;
    cfg["threads"] = fl->threads;
    pending = RunConfig{"convexity", std::move(cfg)};
  });

  auto* geo = app.add_subcommand("geodesics",
                                 "enumerate and count geodesics");
  geo->add_option("--group", fl->group, "group as \"rank,[factors]\"")
      ->required();
  geo->add_option("--gens", fl->gens, "generators")->required();
  geo->add_option("--from", fl->from, "start element (default identity)");
  geo->add_option("--to", fl->to, "target element")->required();
  add_common(geo);
  geo->callback([&] {
    json cfg = common_cfg();
    cfg["group"] = fl->group;
    cfg["gens"] = fl->gens;
    cfg["from"] = fl->from;
    cfg["to"] = fl->to;
    pending = RunConfig{"geodesics", std::move(cfg)};
  });

  auto* pair = app.add_subcommand(
      "construct-pair", "corollary witness: ball graph == product graph");
  pair->add_option("--rank", fl->rank, "free rank");
  pair->add_option("--torsion-order", fl->torsion_order,
                   "cyclic torsion order");
  pair->add_option("--torsion", fl->torsion,
                   "explicit torsion shape, e.g. \"[2,2]\"");
  pair->add_option("--radius", fl->radius, "free-ball radius");
  add_common(pair);
  pair->callback([&] {
    json cfg = common_cfg();
    cfg["rank"] = fl->rank;
    cfg["torsion_order"] = fl->torsion_order;
    cfg["torsion"] = fl->torsion;
    cfg["radius"] = fl->radius;
    pending = RunConfig{"construct-pair", std::move(cfg)};
  });

  auto* rig = app.add_subcommand(
      "verify-rigidity",
      "check a vertex map: automorphism + induced affine map");
  rig->add_option("--group", fl->group, "group as \"rank,[factors]\"")
      ->required();
  rig->add_option("--gens", fl->gens, "generators")->required();
  rig->add_option("--map", fl->map,
                  "negate | translate:(tuple) | flip:N")
      ->required();
  rig->add_option("--radius", fl->radius, "ball radius for the adjacency check");
  rig->add_option("--width", fl->width, "sample box half-width");
  add_common(rig);
  rig->callback([&] {
    json cfg = common_cfg();
    cfg["group"] = fl->group;
    cfg["gens"] = fl->gens;
    cfg["map"] = fl->map;
    cfg["radius"] = fl->radius;
    cfg["width"] = fl->width;
    pending = RunConfig{"verify-rigidity", std::move(cfg)};
  });

  auto* flip = app.add_subcommand(
      "flip-demo", "flip automorphism with its non-affinity witness");
  add_common(flip);
  flip->callback([&] {
    pending = RunConfig{"flip-demo", common_cfg()};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  if (!replay_file.empty()) {
    std::ifstream in(replay_file);
    if (!in) {
      std::cerr << "config error: cannot open replay file '" << replay_file
                << "'\n";
      return 64;
    }
    json doc;
    try {
      doc = json::parse(in);
    } catch (const std::exception& e) {
      std::cerr << "config error: invalid replay document: " << e.what()
                << '\n';
      return 64;
    }
    if (!doc.contains("command") || !doc.contains("config")) {
      std::cerr << "config error: replay document needs command and config\n";
      return 64;
    }
    return run_command(
        RunConfig{doc["command"].get<std::string>(), doc["config"]});
  }

  if (!pending) {
    std::cout << app.help();
    return 64;
  }
  return run_command(*pending);
}
