#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "fixtures.hpp"

using cayley::ElementMap;
using cayley::GeneratingSet;
using cayley::GroupElement;
using cayley::GroupSpec;
using cayley::i64;
using cayley::make_group;
using fx::el;

TEST_CASE("translations and negation are graph automorphisms") {
  for (const auto& f : fx::geodesic_fixtures()) {
    if (f.name == "Z:{1,2}" || f.name == "Z^2:basis+diag") continue;  // keep fast
    CAPTURE(f.name);
    const GroupSpec& g = f.group;
    GroupElement shift = g.identity();
    if (g.rank() > 0) shift.free[0] = 2;
    if (g.torsion_count() > 0) shift.torsion[0] = 1;
    CHECK(cayley::verify_graph_automorphism(cayley::translation_map(g, shift),
                                            f.genset, 3));
    CHECK(cayley::verify_graph_automorphism(cayley::negation_map(g), f.genset,
                                            3));
  }
}

TEST_CASE("the flip is an automorphism exactly for the diagonal edges") {
  GroupSpec g = make_group(1, {2});
  GeneratingSet diag(g, {el({1}, {0}), el({1}, {1})});
  GeneratingSet split(g, {el({1}, {0}), el({0}, {1})});

  for (i64 n : {-2, -1, 0, 1, 2}) {
    CAPTURE(n);
    CHECK(cayley::verify_graph_automorphism(cayley::flip_map(n), diag, 4));
    CHECK(!cayley::verify_graph_automorphism(cayley::flip_map(n), split, 3));
  }

  // Sanity: the flip toggles the torsion bit only on its column.
  auto phi = cayley::flip_map(0);
  CHECK(phi(el({0}, {0})) == el({0}, {1}));
  CHECK(phi(el({0}, {1})) == el({0}, {0}));
  CHECK(phi(el({1}, {0})) == el({1}, {0}));
  GroupSpec z2 = make_group(2, {});
  CHECK_THROWS_AS(phi(z2.identity()), std::invalid_argument);
}

TEST_CASE("sample window enumerates the box times the torsion") {
  GroupSpec g = make_group(1, {2});
  auto w = cayley::sample_window(g, 2);
  CHECK(w.size() == 5 * 2);
  GroupSpec z0 = make_group(0, {3});
  CHECK(cayley::sample_window(z0, 3).size() == 3);
}

TEST_CASE("induced free maps of the standard isomorphisms") {
  GroupSpec g = make_group(1, {2});
  GroupSpec z2 = make_group(2, {});

  SECTION("translation induces the identity") {
    auto rep = cayley::induced_free_map(cayley::translation_map(g, el({5}, {1})),
                                        g, g, 3);
    CHECK(rep.affine());
    CHECK(rep.well_defined);
    CHECK(rep.additive);
    CHECK(rep.matches_linear_part);
    CHECK(rep.linear_part == std::vector<std::vector<i64>>{{1}});
    CHECK(rep.det == 1);
  }

  SECTION("negation induces minus the identity") {
    auto rep1 = cayley::induced_free_map(cayley::negation_map(g), g, g, 3);
    CHECK(rep1.affine());
    CHECK(rep1.linear_part == std::vector<std::vector<i64>>{{-1}});
    CHECK(rep1.det == -1);

    auto rep2 = cayley::induced_free_map(cayley::negation_map(z2), z2, z2, 3);
    CHECK(rep2.affine());
    CHECK(rep2.linear_part ==
          std::vector<std::vector<i64>>{{-1, 0}, {0, -1}});
    CHECK(rep2.det == 1);
  }

  SECTION("the flip induces the identity on the torsion-free quotient") {
    auto rep = cayley::induced_free_map(cayley::flip_map(0), g, g, 3);
    CHECK(rep.affine());
    CHECK(rep.well_defined);
    CHECK(rep.linear_part == std::vector<std::vector<i64>>{{1}});
    CHECK(rep.det == 1);
  }

  SECTION("a lattice shear is affine with determinant one") {
    ElementMap shear = [z2](const GroupElement& e) {
      return el({e.free[0] + e.free[1], e.free[1]}, {});
    };
    auto rep = cayley::induced_free_map(shear, z2, z2, 3);
    CHECK(rep.affine());
    CHECK(rep.linear_part == std::vector<std::vector<i64>>{{1, 1}, {0, 1}});
    CHECK(rep.det == 1);
  }
}

TEST_CASE("induced free map detects each failure mode") {
  GroupSpec g = make_group(1, {2});
  GroupSpec z = make_group(1, {});
  GroupSpec z2 = make_group(2, {});

  SECTION("not defined on torsion cosets") {
    ElementMap mix = [g](const GroupElement& e) {
      return g.canonical({e.free[0] + e.torsion[0]}, {e.torsion[0]});
    };
    auto rep = cayley::induced_free_map(mix, g, g, 3);
    CHECK(!rep.well_defined);
    REQUIRE(rep.coset_witness.has_value());
    const auto& [a, b] = *rep.coset_witness;
    CHECK(a.free == b.free);
    CHECK(a.torsion != b.torsion);
    CHECK(!rep.affine());
  }

  SECTION("not additive") {
    ElementMap square = [z](const GroupElement& e) {
      return el({e.free[0] * e.free[0]}, {});
    };
    auto rep = cayley::induced_free_map(square, z, z, 3);
    CHECK(!rep.additive);
    CHECK(rep.additivity_witness.has_value());
    CHECK(!rep.affine());
  }

  SECTION("doubling is additive but not unimodular") {
    ElementMap dbl = [z](const GroupElement& e) {
      return el({2 * e.free[0]}, {});
    };
    auto rep = cayley::induced_free_map(dbl, z, z, 3);
    CHECK(rep.additive);
    CHECK(rep.matches_linear_part);
    CHECK(rep.det == 2);
    CHECK(!rep.unimodular);
    CHECK(!rep.affine());
  }

  SECTION("rank mismatch is flagged, never silently squared") {
    ElementMap proj = [](const GroupElement& e) {
      return el({e.free[0]}, {});
    };
    auto rep = cayley::induced_free_map(proj, z2, z, 3);
    CHECK(!rep.square);
    CHECK(!rep.unimodular);
    CHECK(!rep.affine());
  }

  SECTION("width zero cannot certify a positive-rank map") {
    auto rep = cayley::induced_free_map(cayley::negation_map(z), z, z, 0);
    CHECK(!rep.window_sufficient);
    CHECK(!rep.affine());
  }
}

TEST_CASE("the flip is not affine at the group level") {
  GroupSpec g = make_group(1, {2});
  auto phi = cayley::flip_map(0);

  // Direct exact witness: psi(x) = phi(x) - phi(0) satisfies
  // psi(2,0) = (2,1) while psi(1,0) + psi(1,0) = (2,0).
  GroupElement base = phi(g.identity());
  CHECK(base == el({0}, {1}));
  auto psi = [&](const GroupElement& e) { return g.sub(phi(e), base); };
  CHECK(psi(el({2}, {0})) == el({2}, {1}));
  CHECK(g.add(psi(el({1}, {0})), psi(el({1}, {0}))) == el({2}, {0}));

  auto rep = cayley::group_affinity(phi, g, g, 3);
  CHECK(!rep.additive);
  REQUIRE(rep.witness.has_value());
  REQUIRE(rep.got.has_value());
  REQUIRE(rep.expected.has_value());
  CHECK(!(*rep.got == *rep.expected));
  // The reported witness reproduces from phi itself.
  const auto& [x, y] = *rep.witness;
  CHECK(psi(g.add(x, y)) == *rep.got);
  CHECK(g.add(psi(x), psi(y)) == *rep.expected);

  // Translations and negation stay additive at the group level.
  CHECK(cayley::group_affinity(cayley::translation_map(g, el({3}, {1})), g, g, 3)
            .additive);
  CHECK(cayley::group_affinity(cayley::negation_map(g), g, g, 3).additive);
}

TEST_CASE("image quasi-types under isomorphisms") {
  GroupSpec g = make_group(1, {2});
  GeneratingSet s(g, {el({1}, {0}), el({1}, {1})});

  std::vector<cayley::LineWindow> lines;
  for (const auto& base :
       {g.identity(), el({1}, {0}), el({0}, {1}), el({2}, {1})})
    lines.push_back(cayley::algebraic_line(s, base, el({1}, {1}), -3, 3));

  SECTION("translation transports type (1) to type (1)") {
    auto rep = cayley::image_quasi_type_consistency(
        cayley::translation_map(g, el({5}, {1})), s, lines);
    CHECK(rep.ok());
    REQUIRE(rep.image_types.size() == 4);
    for (const auto& t : rep.image_types)
      CHECK(t == std::vector<i64>{1});
  }

  SECTION("negation transports all lines to a common type (-1)") {
    auto rep =
        cayley::image_quasi_type_consistency(cayley::negation_map(g), s, lines);
    CHECK(rep.ok());
    for (const auto& t : rep.image_types)
      CHECK(t == std::vector<i64>{-1});
  }

  SECTION("the flip preserves quasi-types") {
    auto rep =
        cayley::image_quasi_type_consistency(cayley::flip_map(0), s, lines);
    CHECK(rep.ok());
    for (const auto& t : rep.image_types)
      CHECK(t == std::vector<i64>{1});
  }

  SECTION("a local reflection breaks type agreement") {
    std::vector<cayley::LineWindow> far;
    far.push_back(cayley::algebraic_line(s, g.identity(), el({1}, {1}), -3, 3));
    far.push_back(cayley::algebraic_line(s, el({20}, {0}), el({1}, {1}), -3, 3));
    ElementMap reflect_far = [g](const GroupElement& e) {
      if (e.free[0] < 10) return e;
      return g.canonical({30 - e.free[0]}, e.torsion);
    };
    auto rep = cayley::image_quasi_type_consistency(reflect_far, s, far);
    CHECK(rep.all_paths);
    CHECK(rep.all_quasi_algebraic);
    CHECK(!rep.types_agree);
    CHECK(rep.disagreement == std::make_pair(0, 1));
    CHECK(!rep.ok());
  }

  SECTION("a one-sided stretch is not even a path") {
    ElementMap stretch = [g](const GroupElement& e) {
      return g.canonical({e.free[0] + (e.free[0] > 0 ? 1 : 0)}, e.torsion);
    };
    auto rep = cayley::image_quasi_type_consistency(stretch, s, lines);
    CHECK(!rep.all_paths);
    CHECK(rep.non_path_line == 0);
    CHECK(!rep.ok());
  }
}

TEST_CASE("torsion parity agrees across the battery") {
  for (const auto& spec : fx::parity_battery()) {
    CAPTURE(spec.name);
    GroupSpec g = make_group(spec.rank, spec.factors);
    i64 expected_order = 1;
    for (i64 f : spec.factors) expected_order *= f;
    std::vector<long long> of(spec.factors.begin(), spec.factors.end());
    long long expected_le2 = oracle::count_order_le_2(of);

    for (const auto& gens : spec.gensets) {
      GeneratingSet s(g, gens);
      auto rep = cayley::torsion_parity(s);
      CHECK(rep.torsion_order == expected_order);
      CHECK(rep.order_le_2 == expected_le2);
      CHECK(rep.beta_parity == rep.beta % 2);
      CHECK(rep.agree);

      // Independent ball count at the same radius.
      oracle::Spec os = fx::oracle_spec(g);
      auto dist = oracle::bfs_distances(os, fx::flat_gens(s), rep.radius);
      CHECK(rep.beta == static_cast<i64>(dist.size()));
    }
  }
}

TEST_CASE("torsion parity pins") {
  GroupSpec g = make_group(1, {2});
  GeneratingSet diag(g, {el({1}, {0}), el({1}, {1})});
  auto rep = cayley::torsion_parity(diag);
  CHECK(rep.radius == 3);
  CHECK(rep.beta == 14);
  CHECK(rep.beta_parity == 0);
  CHECK(rep.torsion_order == 2);
  CHECK(rep.order_le_2 == 2);
  CHECK(rep.agree);

  GroupSpec z = make_group(1, {});
  GeneratingSet ones(z, {el({1}, {})});
  auto rz = cayley::torsion_parity(ones);
  CHECK(rz.radius == 1);
  CHECK(rz.beta == 3);
  CHECK(rz.beta_parity == 1);
  CHECK(rz.torsion_order == 1);
  CHECK(rz.order_le_2 == 1);
  CHECK(rz.agree);
}

TEST_CASE("rank recovery from growth") {
  for (const auto& f : fx::geodesic_fixtures()) {
    CAPTURE(f.name);
    auto est = cayley::rank_via_growth(f.genset, 12);
    REQUIRE(est.ok);
    CHECK(est.rank == f.group.rank());
  }

  GroupSpec z = make_group(1, {});
  GeneratingSet ones(z, {el({1}, {})});
  auto bad = cayley::rank_via_growth(ones, 3);
  CHECK(!bad.ok);
  CHECK(bad.error == "radius too small for a growth fit");
}

TEST_CASE("corollary witnesses: cylinders are box products") {
  struct Case {
    int rank;
    std::vector<i64> factors;
    std::size_t vertices;
    std::size_t edges;
  };
  // Ball of Z at radius 3 is a 7-path (6 edges); ball of Z^2 at radius 3 has
  // 25 vertices and 36 edges; box product with K_k:
  // |E| = |E_ball| * k + |E_Kk| * |ball|.
  const std::vector<Case> cases = {
      {1, {2}, 14, 6 * 2 + 1 * 7},
      {1, {4}, 28, 6 * 4 + 6 * 7},
      {1, {2, 2}, 28, 6 * 4 + 6 * 7},
      {2, {2}, 50, 36 * 2 + 1 * 25},
  };

  for (const auto& c : cases) {
    CAPTURE(c.rank, c.factors);
    GroupSpec g = make_group(c.rank, c.factors);
    auto wit = cayley::build_corollary_witness(g, 3);
    CHECK(wit.radius == 3);
    CHECK(wit.cylinder_labels.size() == c.vertices);
    CHECK(static_cast<std::size_t>(wit.cylinder.n) == c.vertices);
    CHECK(wit.cylinder.edge_count() == c.edges);
    // Identity bijection verified inside the builder; the graphs agree
    // adjacency list by adjacency list.
    CHECK(wit.cylinder == wit.product);
    CHECK(cayley::is_edge_preserving(wit.cylinder, wit.product, wit.bijection));
  }
}

TEST_CASE("corollary witness: the two groups of order four share one graph") {
  GroupSpec a = make_group(1, {4});
  GroupSpec b = make_group(1, {2, 2});
  auto wa = cayley::build_corollary_witness(a, 3);
  auto wb = cayley::build_corollary_witness(b, 3);
  // Both cylinders equal the same box product P7 x K4, giving a direct
  // isomorphism between the two radius-3 ball graphs by composition.
  CHECK(wa.product == wb.product);
  CHECK(wa.cylinder == wb.cylinder);
  CHECK(cayley::is_edge_preserving(wa.cylinder, wb.cylinder, wa.bijection));
}

TEST_CASE("corollary witness: cyclic relabeling is adjacency preserving") {
  GroupSpec g = make_group(1, {2, 2});
  auto wit = cayley::build_corollary_witness(g, 3);
  REQUIRE(wit.cyclic_target == make_group(1, {4}));

  const GroupSpec& t = wit.cyclic_target;
  std::vector<GroupElement> tg;
  tg.push_back(el({1}, {0}));
  for (i64 r = 1; r < 4; ++r) tg.push_back(el({0}, {r}));
  GeneratingSet target_set(t, tg);

  CHECK(wit.to_cyclic(g.identity()) == t.identity());
  auto window = cayley::sample_window(g, 2);
  for (std::size_t i = 0; i < window.size(); ++i)
    for (std::size_t j = i + 1; j < window.size(); ++j) {
      bool e = wit.genset.contains(g.sub(window[j], window[i]));
      bool fe = target_set.contains(
          t.sub(wit.to_cyclic(window[j]), wit.to_cyclic(window[i])));
      if (e != fe) {
        CAPTURE(i, j);
        REQUIRE(e == fe);
      }
    }

  // Elements outside the source group are rejected.
  CHECK_THROWS_AS(wit.to_cyclic(el({0}, {0, 0, 0})), std::invalid_argument);
}
