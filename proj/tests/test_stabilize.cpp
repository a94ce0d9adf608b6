#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "families.hpp"
#include "graph.hpp"
#include "halfvec.hpp"
#include "instance_io.hpp"
#include "matching.hpp"
#include "oracle.hpp"
#include "stabilize.hpp"
#include "support.hpp"

using namespace capstab;
using namespace capstab::testing;

namespace {

// Every claim in a StabReport, re-checked from first principles.
void audit_report(const CapGraph& g, const StabReport& r, StabKind kind) {
  CHECK(r.kind == kind);
  CHECK(r.size == static_cast<int>(r.solution.size()));
  CHECK(r.lower_bound <= r.size);
  CapGraph replayed = apply_stabilizer(g, kind, r.solution);
  CHECK(serialize_instance(replayed) == serialize_instance(r.stabilized));
  std::string why;
  CHECK_MESSAGE(validate_c_matching(r.stabilized, r.matching, &why), why);
  CHECK_MESSAGE(is_dual_feasible(r.stabilized, r.dual, &why), why);
  HalfVector x = HalfVector::from_matching(r.matching);
  CHECK(x.weight(r.stabilized) == r.weight_after);
  CHECK(r.dual.objective(r.stabilized) == r.weight_after);
  CHECK(check_complementary_slackness(r.stabilized, x, r.dual).empty());
  CHECK(3 * r.weight_after >= 2 * r.weight_before);
  CHECK(r.weight_before == max_weight_c_matching(g).value);
}

}  // namespace

TEST_CASE("stability check agrees with the exhaustive verdict") {
  const Suite& suite = shared_suite();
  int compared = 0;
  for (std::size_t i = 0; i < suite.weighted.size(); i += 67) {
    const CapGraph& g = suite.weighted[i];
    if (g.edge_count() > 15) continue;
    ++compared;
    StabilityCheck s = is_stable(g);
    CHECK(s.stable == brute_is_stable(g));
    CHECK(s.stable == (s.matching_value == s.fractional_value));
    CHECK(s.matching_value == brute_max_c_matching(g).value);
    CHECK(s.fractional_value == brute_fractional_value(g));
    CHECK(check_complementary_slackness(g, s.fractional, s.dual).empty());
  }
  CHECK(compared > 30);
}

TEST_CASE("capacity stabilizer on the six vertex example") {
  CapGraph g = make_fig3();
  StabReport r = capacity_stabilizer(g);
  audit_report(g, r, StabKind::kCapacity);
  // one fractional cycle, so one cut, on the cheapest cycle vertex d
  CHECK(r.solution == std::vector<int>{3});
  CHECK(r.lower_bound == 1);
  CHECK(r.weight_before == 12);
  CHECK(r.weight_after == 12);
  CHECK(r.stabilized.capacity(3) == g.capacity(3) - 1);
}

TEST_CASE("capacity stabilizer size meets the exhaustive minimum") {
  const Suite& suite = shared_suite();
  std::vector<CapGraph> unstable = {make_odd_cycle(3), make_odd_cycle(5),
                                    make_odd_cycle(7), make_fig3(),
                                    make_fig4()};
  for (std::size_t i = 0; i < suite.weighted.size(); i += 23) {
    const CapGraph& g = suite.weighted[i];
    if (g.edge_count() > 12 || brute_is_stable(g)) continue;
    unstable.push_back(g);
  }
  CHECK(unstable.size() > 12);
  for (const CapGraph& g : unstable) {
    StabReport r = capacity_stabilizer(g);
    audit_report(g, r, StabKind::kCapacity);
    CapacityStabilizerWitness w = brute_min_capacity_stabilizer(g);
    CHECK(r.size == w.size);
    CHECK(r.lower_bound == w.size);
    // the solution here is a plain set: distinct vertices
    for (std::size_t k = 1; k < r.solution.size(); ++k) {
      CHECK(r.solution[k - 1] < r.solution[k]);
    }
  }

  // stable inputs come back unchanged with an empty solution
  CapGraph path = make_path(4);
  StabReport r = capacity_stabilizer(path);
  CHECK(r.solution.empty());
  CHECK(r.weight_after == r.weight_before);
}

TEST_CASE("edge stabilizer on the six vertex example") {
  CapGraph g = make_fig3();
  StabReport r = edge_stabilizer_approx(g);
  audit_report(g, r, StabKind::kEdge);
  CHECK(r.solution == std::vector<int>{2, 3});
  CHECK(r.lower_bound == 1);
  CHECK(r.weight_after == 12);
}

TEST_CASE("edge stabilizer respects the degree and cycle bounds everywhere") {
  const Suite& suite = shared_suite();
  std::vector<CapGraph> unstable = {make_odd_cycle(3), make_odd_cycle(5),
                                    make_odd_cycle(7), make_fig3(),
                                    make_fig4()};
  for (std::size_t i = 0; i < suite.weighted.size(); i += 23) {
    const CapGraph& g = suite.weighted[i];
    if (g.edge_count() > 12 || brute_is_stable(g)) continue;
    unstable.push_back(g);
  }
  CHECK(unstable.size() > 12);
  for (const CapGraph& g : unstable) {
    int max_degree = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      max_degree = std::max(max_degree, static_cast<int>(g.incident(v).size()));
    }
    int cycles = gamma_exact(g);
    StabReport r = edge_stabilizer_approx(g);
    audit_report(g, r, StabKind::kEdge);
    CHECK(brute_is_stable(r.stabilized));
    CHECK(r.size <= max_degree * cycles);
    EdgeStabilizerWitness w = brute_min_edge_stabilizer(g, false);
    CHECK(r.size >= w.size);
    CHECK(r.lower_bound <= w.size);
  }
}

TEST_CASE("lower bounds on the classics") {
  LowerBounds tri = lower_bounds(make_odd_cycle(3));
  CHECK(tri.capacity_lb == 1);
  CHECK(tri.edge_lb == 1);

  // two disjoint triangles: two cycles, unit weights keep the edge bound full
  CapGraph two = CapGraph::build(
      {"a", "b", "c", "d", "e", "f"}, {1, 1, 1, 1, 1, 1},
      {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {0, 2, Rational(1)},
       {3, 4, Rational(1)}, {4, 5, Rational(1)}, {3, 5, Rational(1)}});
  LowerBounds lb = lower_bounds(two);
  CHECK(lb.capacity_lb == 2);
  CHECK(lb.edge_lb == 2);

  // with general weights the edge bound halves
  CapGraph mixed = CapGraph::build(
      {"a", "b", "c", "d", "e", "f"}, {1, 1, 1, 1, 1, 1},
      {{0, 1, Rational(2)}, {1, 2, Rational(2)}, {0, 2, Rational(2)},
       {3, 4, Rational(3)}, {4, 5, Rational(3)}, {3, 5, Rational(3)}});
  LowerBounds mb = lower_bounds(mixed);
  CHECK(mb.capacity_lb == 2);
  CHECK(mb.edge_lb == 1);

  CHECK(lower_bounds(make_path(4)).capacity_lb == 0);
  CHECK_THROWS_AS(lower_bounds(make_odd_cycle(13), 12), ScaleError);
}

TEST_CASE("minimalization reaches an inclusion minimal stabilizer") {
  CapGraph g = make_fig3();
  // pad the real solution with redundant extras; they must all drop
  std::vector<int> padded = {0, 2, 3, 5};
  std::vector<int> lean = minimalize_stabilizer(g, StabKind::kEdge, padded);
  CHECK(lean.size() < padded.size());
  CHECK(brute_is_stable(apply_stabilizer(g, StabKind::kEdge, lean)));
  for (std::size_t i = 0; i < lean.size(); ++i) {
    std::vector<int> without = lean;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
    CHECK_FALSE(brute_is_stable(apply_stabilizer(g, StabKind::kEdge, without)));
  }

  // ties are broken toward keeping low ids
  CapGraph tri = make_odd_cycle(3);
  std::vector<int> all = {0, 1, 2};
  CHECK(minimalize_stabilizer(tri, StabKind::kEdge, all) ==
        std::vector<int>{0});

  // inputs that do not stabilize are refused: cutting one triangle of two
  // leaves the other fractional
  CapGraph two = CapGraph::build(
      {"a", "b", "c", "d", "e", "f"}, {1, 1, 1, 1, 1, 1},
      {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {0, 2, Rational(1)},
       {3, 4, Rational(1)}, {4, 5, Rational(1)}, {3, 5, Rational(1)}});
  CHECK_THROWS_AS(minimalize_stabilizer(two, StabKind::kEdge, {0}),
                  InvalidInstance);
}

TEST_CASE("solution application validates its input") {
  CapGraph tri = make_odd_cycle(3);
  CHECK_THROWS_AS(apply_stabilizer(tri, StabKind::kEdge, {7}),
                  InvalidInstance);
  CHECK_THROWS_AS(apply_stabilizer(tri, StabKind::kCapacity, {0, 0}),
                  InvalidInstance);
  CapGraph cut = apply_stabilizer(tri, StabKind::kCapacity, {1});
  CHECK(cut.capacity(1) == 0);
  CHECK(cut.edge_count() == 3);
  CapGraph trimmed = apply_stabilizer(tri, StabKind::kEdge, {1});
  CHECK(trimmed.edge_count() == 2);
}
