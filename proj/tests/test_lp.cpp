#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
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

TEST_CASE("fractional optimum on pinned instances") {
  CapGraph tri = CapGraph::build({"a", "b", "c"}, {1, 1, 1},
                                 {{0, 1, Rational(1)},
                                  {1, 2, Rational(1)},
                                  {0, 2, Rational(1)}});
  LpResult r = solve_fractional(tri);
  CHECK(r.primal_value == Rational(3, 2));
  CHECK(r.dual_value == Rational(3, 2));
  // the all-half cycle is the unique optimum here
  for (EdgeId e = 0; e < 3; ++e) CHECK(r.primal.halves(e) == 1);

  CHECK(solve_fractional(make_odd_cycle(5)).primal_value == Rational(5, 2));
  CHECK(solve_fractional(make_path(4)).primal_value == Rational(2));
}

TEST_CASE("pinned optimal dual of the six vertex example") {
  CapGraph g = make_fig3();
  LpResult r = solve_fractional(g);
  CHECK(r.primal_value == Rational(25, 2));
  std::vector<Rational> want_y = {Rational(3, 2), Rational(7, 2),
                                  Rational(3, 2), Rational(1, 2),
                                  Rational(1, 2), Rational(3, 2)};
  CHECK(r.dual.y == want_y);
  for (const Rational& z : r.dual.z) CHECK(z == 0);
}

TEST_CASE("primal dual pair is optimal across the corpus") {
  const Suite& suite = shared_suite();
  int checked = 0;
  for (std::size_t i = 0; i < suite.weighted.size(); i += 101) {
    const CapGraph& g = suite.weighted[i];
    ++checked;
    LpResult r = solve_fractional(g);
    std::string why;
    CHECK_MESSAGE(is_feasible(g, r.primal, &why), why);
    CHECK_MESSAGE(is_basic(g, r.primal, &why), why);
    CHECK_MESSAGE(is_dual_feasible(g, r.dual, &why), why);
    CHECK(r.primal.weight(g) == r.primal_value);
    CHECK(r.dual.objective(g) == r.dual_value);
    CHECK(r.primal_value == r.dual_value);
    CHECK(check_complementary_slackness(g, r.primal, r.dual).empty());
    if (g.edge_count() <= 15) {
      CHECK(r.primal_value == brute_fractional_value(g));
    }
  }
  CHECK(checked > 25);
  for (std::size_t i = 0; i < suite.random.size(); i += 29) {
    const CapGraph& g = suite.random[i];
    LpResult r = solve_fractional(g);
    CHECK(check_complementary_slackness(g, r.primal, r.dual).empty());
    CHECK(r.primal_value == brute_fractional_value(g));
  }
}

TEST_CASE("equal graphs solve to equal results") {
  CapGraph g = make_random(7, 12, 2, 3, 77);
  LpResult a = solve_fractional(g);
  LpResult b = solve_fractional(g);
  CHECK(a.primal == b.primal);
  CHECK(a.dual.y == b.dual.y);
  CHECK(a.dual.z == b.dual.z);
}

TEST_CASE("basic repair fixes even cycles and open paths only") {
  // a half-valued even cycle is not an extreme point; the repair must end
  // on a no-worse basic vector
  CapGraph c4 = CapGraph::build({"a", "b", "c", "d"}, {1, 1, 1, 1},
                                {{0, 1, Rational(1)},
                                 {1, 2, Rational(1)},
                                 {2, 3, Rational(1)},
                                 {0, 3, Rational(1)}});
  HalfVector x(4, 1);
  CHECK_FALSE(is_basic(c4, x));
  HalfVector fixed = make_basic(c4, x);
  CHECK(is_basic(c4, fixed));
  CHECK(fixed.weight(c4) >= x.weight(c4));

  // an open half path
  CapGraph p3 = make_path(3);
  HalfVector y(2, 1);
  HalfVector fixed_path = make_basic(p3, y);
  CHECK(is_basic(p3, fixed_path));
  CHECK(fixed_path.weight(p3) >= y.weight(p3));

  // an unsaturated odd cycle is not repairable by circuit steps
  CapGraph tri = CapGraph::build({"a", "b", "c"}, {2, 2, 2},
                                 {{0, 1, Rational(1)},
                                  {1, 2, Rational(1)},
                                  {0, 2, Rational(1)}});
  HalfVector z(3, 1);
  CHECK_THROWS_AS(make_basic(tri, z), std::logic_error);

  // already basic vectors pass through untouched
  CapGraph c5 = make_odd_cycle(5);
  HalfVector h(5, 1);
  CHECK(make_basic(c5, h) == h);
}

TEST_CASE("repair keeps feasibility on randomly perturbed optima") {
  const Suite& suite = shared_suite();
  for (std::size_t i = 0; i < suite.random.size(); i += 83) {
    const CapGraph& g = suite.random[i];
    LpResult r = solve_fractional(g);
    HalfVector fixed = make_basic(g, r.primal);
    CHECK(fixed == r.primal);
  }
}
