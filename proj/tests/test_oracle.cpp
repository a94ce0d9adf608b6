#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <string>

#include "doctest.h"
#include "families.hpp"
#include "graph.hpp"
#include "halfvec.hpp"
#include "oracle.hpp"
#include "simplex.hpp"
#include "support.hpp"

using namespace capstab;
using namespace capstab::testing;

namespace {

CapGraph triangle() {
  return CapGraph::build({"a", "b", "c"}, {1, 1, 1},
                         {{0, 1, Rational(1)},
                          {1, 2, Rational(1)},
                          {0, 2, Rational(1)}});
}

// Two vertex-disjoint triangles, all weights 1 in the first and 2 in the
// second, joined by nothing. Both triangles are fractional, so two cycles.
CapGraph two_triangles() {
  return CapGraph::build(
      {"a", "b", "c", "d", "e", "f"}, {1, 1, 1, 1, 1, 1},
      {{0, 1, Rational(1)},
       {1, 2, Rational(1)},
       {0, 2, Rational(1)},
       {3, 4, Rational(2)},
       {4, 5, Rational(2)},
       {3, 5, Rational(2)}});
}

}  // namespace

TEST_CASE("exhaustive matching optimum on pinned instances") {
  CHECK(brute_max_c_matching(triangle()).value == 1);
  CHECK(brute_max_c_matching(make_odd_cycle(5)).value == 2);
  CHECK(brute_max_c_matching(make_fig3()).value == 12);
  CHECK(brute_max_c_matching(two_triangles()).value == 3);

  // lexicographically smallest among equal-weight optima
  CapGraph g = triangle();
  BruteMatchingResult r = brute_max_c_matching(g);
  CHECK(r.matching.edges() == std::vector<EdgeId>{0});
}

TEST_CASE("exhaustive fractional optimum on pinned instances") {
  CHECK(brute_fractional_value(triangle()) == Rational(3, 2));
  CHECK(brute_fractional_value(make_odd_cycle(5)) == Rational(5, 2));
  CHECK(brute_fractional_value(make_fig3()) == Rational(25, 2));
  CHECK(brute_fractional_value(make_path(4)) == Rational(2));
}

TEST_CASE("stability ground truth distinguishes the classics") {
  CHECK_FALSE(brute_is_stable(triangle()));
  CHECK_FALSE(brute_is_stable(make_odd_cycle(5)));
  CHECK(brute_is_stable(make_path(5)));
  CHECK(brute_is_stable(CapGraph::build({"a", "b"}, {1, 1},
                                        {{0, 1, Rational(3)}})));
}

TEST_CASE("size bounds refuse oversized inputs loudly") {
  CapGraph big = make_complete(7);  // 21 edges
  CHECK_THROWS_AS(brute_max_c_matching(big), ScaleError);
  CHECK_THROWS_AS(brute_fractional_value(big), ScaleError);
  CHECK_THROWS_AS(brute_basic_optima(big), ScaleError);
  CHECK_THROWS_AS(enumerate_polytope_vertices(big), ScaleError);
  try {
    brute_fractional_value(big);
  } catch (const ScaleError& e) {
    std::string msg = e.what();
    CHECK(msg.find("21") != std::string::npos);
    CHECK(msg.find("bound") != std::string::npos);
  }
  // explicit bounds override the default
  CHECK(brute_max_c_matching(big, 21).value == 3);
}

TEST_CASE("basic optimum enumeration finds every optimum and the cycle minimum") {
  BasicOptima tri = brute_basic_optima(triangle());
  CHECK(tri.value == Rational(3, 2));
  CHECK(tri.optima.size() == 1);
  CHECK(tri.min_cycles == 1);
  CHECK(tri.min_cycle_witness.weight(triangle()) == Rational(3, 2));

  BasicOptima two = brute_basic_optima(two_triangles());
  CHECK(two.value == Rational(9, 2));
  CHECK(two.min_cycles == 2);

  BasicOptima stable = brute_basic_optima(make_path(4));
  CHECK(stable.min_cycles == 0);
  for (const HalfVector& x : stable.optima) {
    CHECK(is_basic(make_path(4), x));
    CHECK(x.weight(make_path(4)) == stable.value);
  }
}

TEST_CASE("guided enumeration agrees with the plain scan under an optimal dual") {
  const Suite& suite = shared_suite();
  int compared = 0;
  for (std::size_t i = 0; i < suite.weighted.size(); i += 151) {
    const CapGraph& g = suite.weighted[i];
    if (g.edge_count() > 10) continue;
    ++compared;
    BasicOptima plain = brute_basic_optima(g);
    LpResult lp = solve_fractional(g);
    auto guided = guided_basic_optima(g, lp.dual, 1'000'000);
    REQUIRE(guided.has_value());
    CHECK(guided->value == plain.value);
    CHECK(guided->min_cycles == plain.min_cycles);
    CHECK(guided->optima.size() == plain.optima.size());
  }
  CHECK(compared > 10);

  // a tiny node budget reports failure instead of a wrong answer
  CapGraph g = make_complete(5);
  LpResult lp = solve_fractional(g);
  CHECK_FALSE(guided_basic_optima(g, lp.dual, 1).has_value());
}

TEST_CASE("stabilizer witnesses are minimal and lexicographic") {
  CapacityStabilizerWitness cap = brute_min_capacity_stabilizer(triangle());
  CHECK(cap.size == 1);
  CHECK(cap.vertices == std::vector<VertexId>{0});

  CapacityStabilizerWitness both = brute_min_capacity_stabilizer(two_triangles());
  CHECK(both.size == 2);

  CHECK(brute_min_capacity_stabilizer(make_path(4)).size == 0);

  EdgeStabilizerWitness e1 = brute_min_edge_stabilizer(triangle(), false);
  CHECK(e1.size == 1);
  CHECK(e1.edges == std::vector<EdgeId>{0});
  // removing an edge of a unit triangle keeps the matching number
  EdgeStabilizerWitness e2 = brute_min_edge_stabilizer(triangle(), true);
  CHECK(e2.size == 1);

  // weighted case where weight preservation costs extra removals
  EdgeStabilizerWitness f1 = brute_min_edge_stabilizer(make_fig1(3, Rational(1, 4)), false);
  CHECK(f1.size == 1);
  EdgeStabilizerWitness f2 = brute_min_edge_stabilizer(make_fig1(3, Rational(1, 4)), true);
  CHECK(f2.size == 3);
}

TEST_CASE("polytope vertex enumeration matches the rank-based tests") {
  CapGraph c5 = make_odd_cycle(5);
  PolytopeVertexGraph pv = enumerate_polytope_vertices(c5);
  // 11 integral matchings plus the all-half cycle
  CHECK(pv.vertices.size() == 12);
  for (const HalfVector& x : pv.vertices) {
    CHECK(oracle_is_vertex(c5, x));
    CHECK(is_basic(c5, x));
  }
  std::set<std::pair<int, int>> adj(pv.adjacency.begin(), pv.adjacency.end());
  CHECK(!adj.empty());
  for (const auto& [i, j] : adj) {
    CHECK(i < j);
    CHECK(oracle_adjacent(c5, pv.vertices[i], pv.vertices[j]));
  }
  // vertices are listed in strictly increasing lexicographic order
  for (std::size_t i = 1; i < pv.vertices.size(); ++i) {
    bool less = false;
    for (EdgeId e = 0; e < c5.edge_count(); ++e) {
      if (pv.vertices[i - 1].halves(e) != pv.vertices[i].halves(e)) {
        less = pv.vertices[i - 1].halves(e) < pv.vertices[i].halves(e);
        break;
      }
    }
    CHECK(less);
  }
}
