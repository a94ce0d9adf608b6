#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <vector>

#include "doctest.h"
#include "families.hpp"
#include "graph.hpp"
#include "matching.hpp"
#include "oracle.hpp"
#include "support.hpp"
#include "walks.hpp"

using namespace capstab;
using namespace capstab::testing;

namespace {

CapGraph triangle() {
  return CapGraph::build({"v1", "v2", "v3"}, {1, 1, 1},
                         {{0, 1, Rational(1)},
                          {1, 2, Rational(1)},
                          {0, 2, Rational(1)}});
}

}  // namespace

TEST_CASE("graph construction rejects malformed input") {
  CHECK_THROWS_AS(CapGraph::build({"a"}, {1}, {{0, 0, Rational(1)}}),
                  InvalidInstance);
  CHECK_THROWS_AS(CapGraph::build({"a", "b"}, {1, 1},
                                  {{0, 1, Rational(1)}, {1, 0, Rational(2)}}),
                  InvalidInstance);
  CHECK_THROWS_AS(CapGraph::build({"a", "b"}, {1, 1}, {{0, 1, Rational(-1)}}),
                  InvalidInstance);
  CHECK_THROWS_AS(CapGraph::build({"a", "b"}, {1, -1}, {{0, 1, Rational(1)}}),
                  InvalidInstance);
  CHECK_THROWS_AS(CapGraph::build({"a", "b"}, {1, 1}, {{0, 2, Rational(1)}}),
                  InvalidInstance);
}

TEST_CASE("graph accessors and adjacency index agree") {
  CapGraph g = make_fig3();
  CHECK(g.vertex_count() == 6);
  CHECK(g.edge_count() == 6);
  CHECK(g.max_degree() == 3);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (EdgeId e : g.incident(v)) {
      CHECK((g.edge(e).u == v || g.edge(e).v == v));
      CHECK(g.other_end(e, v) != v);
    }
  }
  CHECK(g.find_edge(0, 1).has_value());
  CHECK(g.find_edge(1, 0) == g.find_edge(0, 1));
  CHECK_FALSE(g.find_edge(0, 3).has_value());
  CHECK(g.find_vertex("b") == 1);
  CHECK_FALSE(g.find_vertex("zz").has_value());
}

TEST_CASE("capacity reduction and edge removal re-index consistently") {
  CapGraph g = make_fig3();
  CapGraph red = g.reduce_capacities({1, 1});
  CHECK(red.capacity(1) == 0);
  CHECK(red.edge_count() == g.edge_count());
  CHECK_THROWS_AS(g.reduce_capacities({0, 0}), InvalidInstance);
  CHECK_THROWS_AS(g.reduce_capacities({99}), InvalidInstance);

  CapGraph cut = g.remove_edges({0, 3});
  CHECK(cut.edge_count() == 4);
  CHECK(cut.vertex_count() == 6);
  // surviving edges keep endpoints and weights, ids densify in order
  CHECK(cut.edge(0).u == g.edge(1).u);
  CHECK(cut.edge(0).v == g.edge(1).v);
  CHECK(cut.edge(0).weight == g.edge(1).weight);
  CHECK_THROWS_AS(g.remove_edges({6}), InvalidInstance);
  // the drop list is a set: repeating an id changes nothing
  CHECK(g.remove_edges({0, 0}).edge_count() == 5);
}

TEST_CASE("matching degrees count incident matched edges") {
  CapGraph g = triangle();
  CMatching m = CMatching::empty(g);
  m.in[0] = 1;  // v1-v2
  CHECK(degree_in_matching(g, m, 0) == 1);
  CHECK(degree_in_matching(g, m, 1) == 1);
  CHECK(degree_in_matching(g, m, 2) == 0);
  CHECK(validate_c_matching(g, m));

  CapGraph star = CapGraph::build({"c", "x", "y", "z"}, {3, 1, 1, 1},
                                  {{0, 1, Rational(1)},
                                   {0, 2, Rational(1)},
                                   {0, 3, Rational(1)}});
  CMatching all = CMatching::empty(star);
  all.in = {1, 1, 1};
  CHECK(validate_c_matching(star, all));
  CHECK(degree_in_matching(star, all, 0) == 3);

  CMatching bad = CMatching::empty(g);
  bad.in = {1, 1, 0};  // v2 twice with capacity 1
  std::string why;
  CHECK_FALSE(validate_c_matching(g, bad, &why));
  CHECK(why.find("v2") != std::string::npos);
}

TEST_CASE("walk tracing enforces continuity and computes kappa") {
  CapGraph g = make_odd_cycle(5);
  WalkRecord w = WalkRecord::trace(g, 0, {0, 1, 2, 3, 4});
  CHECK(w.closed());
  CHECK(w.is_trail());
  CHECK(w.length() == 5);
  CHECK(w.vertex_sequence(g).front() == 0);
  CHECK(w.vertex_sequence(g).back() == 0);

  WalkRecord rep = WalkRecord::trace(g, 0, {0, 0, 0});
  CHECK_FALSE(rep.is_trail());
  CHECK(rep.kappa(g.edge_count())[0] == 3);
  CHECK(rep.end == 1);

  CHECK_THROWS_AS(WalkRecord::trace(g, 0, {2}), InvalidInstance);
  CHECK_THROWS_AS(WalkRecord::trace(g, 0, {0, 3}), InvalidInstance);
}

TEST_CASE("walk classification matches first principles on a path") {
  CapGraph p = make_path(4);  // v0-v1-v2-v3, unit weights and capacities
  CMatching m = CMatching::empty(p);
  m.in[1] = 1;  // middle edge matched

  WalkRecord w = WalkRecord::trace(p, 0, {0, 1, 2});
  WalkFlags f = classify_walk(p, m, w);
  CHECK(f.alternating);
  CHECK(f.augmenting);  // two unmatched passes against one matched
  CHECK(f.proper);
  CHECK(f.feasible);

  CMatching aug = apply_walk(p, m, w);
  CHECK(validate_c_matching(p, aug));
  CHECK(matching_weight(p, aug) == matching_weight(p, m) + 1);

  // non-alternating: two unmatched edges in a row
  CMatching none = CMatching::empty(p);
  WalkFlags f2 = classify_walk(p, none, WalkRecord::trace(p, 0, {0, 1}));
  CHECK_FALSE(f2.alternating);
  CHECK_FALSE(f2.proper);
  CHECK_FALSE(f2.feasible);
}

TEST_CASE("epsilon augmentation tracks kappa on each side of the matching") {
  CapGraph p = make_path(4);
  CMatching m = CMatching::empty(p);
  m.in[1] = 1;
  WalkRecord w = WalkRecord::trace(p, 0, {0, 1, 2});
  Rational eps(1, 4);
  std::vector<Rational> x = epsilon_augmentation(p, m, w, eps);
  CHECK(x[0] == eps);
  CHECK(x[1] == Rational(3, 4));
  CHECK(x[2] == eps);
  CHECK_THROWS_AS(epsilon_augmentation(p, m, w, Rational(0)), InvalidInstance);
}

TEST_CASE("alternate rounding shifts only the chosen vertex") {
  CapGraph c5 = make_odd_cycle(5);
  HalfVector x(c5.edge_count(), 1);  // all halves
  auto dec = decompose_support(c5, x);
  REQUIRE(dec.cycles.size() == 1);
  for (VertexId v = 0; v < 5; ++v) {
    HalfVector ex = alternate_round(c5, x, dec.cycles[0], v,
                                    RoundMode::kExposing);
    CHECK(ex.is_integral());
    CHECK(ex.degree_halves(c5, v) == x.degree_halves(c5, v) - 2);
    for (VertexId u = 0; u < 5; ++u)
      if (u != v) CHECK(ex.degree_halves(c5, u) == x.degree_halves(c5, u));
  }
  // covering exceeds the unit capacity here, but the arithmetic contract
  // is still degree +1 at the chosen vertex
  HalfVector cov = alternate_round(c5, x, dec.cycles[0], 2,
                                   RoundMode::kCovering);
  CHECK(cov.degree_halves(c5, 2) == x.degree_halves(c5, 2) + 2);
}

TEST_CASE("trail and walk witnesses validate across the random corpus") {
  const Suite& suite = shared_suite();
  int checked = 0;
  for (std::size_t i = 0; i < suite.random.size(); i += 7) {
    const CapGraph& g = suite.random[i];
    if (g.edge_count() > 10 || g.edge_count() == 0) continue;
    ++checked;
    MatchingResult best = max_weight_c_matching(g);
    // a maximum matching admits no proper augmenting trail
    CHECK_FALSE(find_proper_augmenting_trail(g, best.matching).has_value());
    // an empty matching of positive-weight edges admits one
    CMatching empty = CMatching::empty(g);
    auto trail = find_proper_augmenting_trail(g, empty);
    if (best.value > 0) {
      REQUIRE(trail.has_value());
      WalkFlags f = classify_walk(g, empty, *trail);
      CHECK(f.alternating);
      CHECK(f.augmenting);
      CHECK(f.proper);
      CMatching better = apply_walk(g, empty, *trail);
      CHECK(matching_weight(g, better) > 0);
    } else {
      CHECK_FALSE(trail.has_value());
    }
  }
  CHECK(checked > 20);
}
