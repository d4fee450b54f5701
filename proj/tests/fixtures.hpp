#pragma once

// Shared fixtures: a battery of group/generating-set pairs spanning ranks
// 0-2 and torsion orders 1-8, plus small helpers to bridge library elements
// and the flat coordinates used by the reference oracle.

#include <random>
#include <string>
#include <vector>

#include "cayley/cayley.hpp"
#include "oracle.hpp"

namespace fx {

using cayley::GroupElement;
using cayley::GroupSpec;
using cayley::i64;

inline GroupElement el(std::vector<i64> free, std::vector<i64> tors) {
  return GroupElement{std::move(free), std::move(tors)};
}

struct Fixture {
  std::string name;
  GroupSpec group;
  cayley::GeneratingSet genset;
};

inline Fixture fixture(const std::string& name, int rank,
                       std::vector<i64> factors,
                       std::vector<GroupElement> gens) {
  GroupSpec g = cayley::make_group(rank, std::move(factors));
  return Fixture{name, g, cayley::GeneratingSet(g, std::move(gens))};
}

// Ten fixtures across ranks 0-2; the generating sets are symmetrized by the
// library, so one-sided listings suffice here.
inline const std::vector<Fixture>& geodesic_fixtures() {
  static const std::vector<Fixture> fixtures = [] {
    std::vector<Fixture> v;
    v.push_back(fixture("Z:{1}", 1, {}, {el({1}, {})}));
    v.push_back(fixture("Z:{1,2}", 1, {}, {el({1}, {}), el({2}, {})}));
    v.push_back(fixture("Z^2:basis", 2, {}, {el({1, 0}, {}), el({0, 1}, {})}));
    v.push_back(fixture("Z^2:basis+diag", 2, {},
                        {el({1, 0}, {}), el({0, 1}, {}), el({1, 1}, {})}));
    v.push_back(
        fixture("ZxZ2:{(1,0),(1,1)}", 1, {2}, {el({1}, {0}), el({1}, {1})}));
    v.push_back(
        fixture("ZxZ2:{(1,0),(0,1)}", 1, {2}, {el({1}, {0}), el({0}, {1})}));
    v.push_back(
        fixture("ZxZ4:{(1,0),(0,1)}", 1, {4}, {el({1}, {0}), el({0}, {1})}));
    v.push_back(fixture("ZxZ2xZ2", 1, {2, 2},
                        {el({1}, {0, 0}), el({0}, {1, 0}), el({0}, {0, 1})}));
    v.push_back(fixture("Z5:{1}", 0, {5}, {el({}, {1})}));
    v.push_back(fixture("Z^2xZ2", 2, {2},
                        {el({1, 0}, {0}), el({0, 1}, {0}), el({0, 0}, {1})}));
    return v;
  }();
  return fixtures;
}

struct ParitySpec {
  std::string name;
  int rank;
  std::vector<i64> factors;
  std::vector<std::vector<GroupElement>> gensets;  // >= 2 each
};

// Fourteen specs, two generating sets each, covering ranks 0-2 and torsion
// orders 1 through 8 (including both Abelian shapes of order 4 and 8).
inline const std::vector<ParitySpec>& parity_battery() {
  static const std::vector<ParitySpec> battery = [] {
    std::vector<ParitySpec> v;
    v.push_back({"Z", 1, {}, {{el({1}, {})}, {el({1}, {}), el({2}, {})}}});
    v.push_back({"Z^2",
                 2,
                 {},
                 {{el({1, 0}, {}), el({0, 1}, {})},
                  {el({1, 0}, {}), el({0, 1}, {}), el({1, 1}, {})}}});
    v.push_back({"ZxZ2",
                 1,
                 {2},
                 {{el({1}, {0}), el({1}, {1})}, {el({1}, {0}), el({0}, {1})}}});
    v.push_back({"ZxZ3",
                 1,
                 {3},
                 {{el({1}, {0}), el({0}, {1})}, {el({1}, {1}), el({1}, {2})}}});
    v.push_back({"ZxZ4",
                 1,
                 {4},
                 {{el({1}, {0}), el({0}, {1})}, {el({1}, {1}), el({0}, {1})}}});
    v.push_back({"ZxZ5",
                 1,
                 {5},
                 {{el({1}, {0}), el({0}, {1})}, {el({1}, {0}), el({0}, {2})}}});
    v.push_back({"ZxZ6",
                 1,
                 {6},
                 {{el({1}, {0}), el({0}, {1})}, {el({1}, {1}), el({0}, {1})}}});
    v.push_back({"ZxZ7",
                 1,
                 {7},
                 {{el({1}, {0}), el({0}, {1})}, {el({1}, {0}), el({0}, {2})}}});
    v.push_back({"ZxZ8",
                 1,
                 {8},
                 {{el({1}, {0}), el({0}, {1})}, {el({1}, {0}), el({0}, {3})}}});
    v.push_back({"ZxZ2xZ2",
                 1,
                 {2, 2},
                 {{el({1}, {0, 0}), el({0}, {1, 0}), el({0}, {0, 1})},
                  {el({1}, {0, 0}), el({0}, {1, 1}), el({0}, {1, 0})}}});
    v.push_back({"ZxZ2xZ4",
                 1,
                 {2, 4},
                 {{el({1}, {0, 0}), el({0}, {1, 0}), el({0}, {0, 1})},
                  {el({1}, {0, 0}), el({0}, {1, 0}), el({0}, {1, 1})}}});
    v.push_back({"Z^2xZ2",
                 2,
                 {2},
                 {{el({1, 0}, {0}), el({0, 1}, {0}), el({0, 0}, {1})},
                  {el({1, 0}, {0}), el({0, 1}, {0}), el({1, 1}, {1})}}});
    v.push_back({"Z4", 0, {4}, {{el({}, {1})}, {el({}, {1}), el({}, {2})}}});
    v.push_back({"Z2xZ2",
                 0,
                 {2, 2},
                 {{el({}, {1, 0}), el({}, {0, 1})},
                  {el({}, {1, 0}), el({}, {1, 1})}}});
    return v;
  }();
  return battery;
}

// --- Oracle bridge -------------------------------------------------------

inline oracle::Spec oracle_spec(const GroupSpec& g) {
  oracle::Spec s;
  s.rank = g.rank();
  for (i64 d : g.torsion_factors()) s.factors.push_back(d);
  return s;
}

inline oracle::Flat flat(const GroupElement& e) {
  oracle::Flat f;
  for (i64 v : e.free) f.push_back(v);
  for (i64 v : e.torsion) f.push_back(v);
  return f;
}

inline std::vector<oracle::Flat> flat_gens(const cayley::GeneratingSet& s) {
  std::vector<oracle::Flat> out;
  for (const auto& e : s.elements()) out.push_back(flat(e));
  return out;
}

inline GroupElement unflat(const GroupSpec& g, const oracle::Flat& f) {
  std::vector<i64> free(f.begin(), f.begin() + g.rank());
  std::vector<i64> tors(f.begin() + g.rank(), f.end());
  return g.canonical(std::move(free), std::move(tors));
}

// --- Random geodesics ----------------------------------------------------

// A uniformly seeded random geodesic of the requested length anywhere in
// the group: pick a random ball element at that distance, walk toward it
// choosing uniformly among distance-decreasing generators, then translate
// by a random base point.
inline cayley::Segment random_geodesic(const cayley::MetricBall& b,
                                       std::mt19937_64& rng, int length,
                                       int base_box = 8) {
  const auto& s = b.genset();
  const GroupSpec& g = s.group();
  if (length > b.radius())
    throw std::invalid_argument("random_geodesic: length exceeds radius");

  const int lo = b.shell_prefix_end(length - 1);
  const int hi = b.shell_prefix_end(length);
  if (lo == hi)  // no elements at this distance (finite group saturated)
    return cayley::Segment{{g.identity()}};
  std::uniform_int_distribution<int> pick(lo, hi - 1);
  const GroupElement target = b.vertex(pick(rng));

  std::vector<i64> base_free(g.rank());
  std::vector<i64> base_tors(g.torsion_count());
  std::uniform_int_distribution<i64> box(-base_box, base_box);
  for (auto& v : base_free) v = box(rng);
  for (int i = 0; i < g.torsion_count(); ++i)
    base_tors[i] =
        std::uniform_int_distribution<i64>(0, g.torsion_factors()[i] - 1)(rng);
  const GroupElement base = g.canonical(base_free, base_tors);

  cayley::Segment seg;
  seg.points.push_back(base);
  GroupElement rel = g.identity();
  for (int remaining = length; remaining > 0; --remaining) {
    std::vector<GroupElement> options;
    for (const auto& t : s.elements()) {
      GroupElement nrel = g.add(rel, t);
      auto d = b.distance_to_origin(g.sub(target, nrel));
      if (d && *d == remaining - 1) options.push_back(nrel);
    }
    std::uniform_int_distribution<std::size_t> opt(0, options.size() - 1);
    rel = options[opt(rng)];
    seg.points.push_back(g.add(base, rel));
  }
  return seg;
}

}  // namespace fx
