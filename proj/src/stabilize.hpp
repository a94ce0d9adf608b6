#pragma once

#include <vector>

#include "gamma.hpp"
#include "graph.hpp"
#include "halfvec.hpp"

namespace capstab {

// Verdict of the stability check together with everything needed to audit
// it by plain arithmetic. The matching is the lexicographically smallest
// maximum-weight c-matching; the fractional point is a basic optimum of
// the relaxation and the dual covers it with equal objective. The graph is
// stable exactly when matching_value == fractional_value; when it is not,
// the fractional point itself is the witness of the gap.
struct StabilityCheck {
  bool stable = false;
  CMatching matching;
  Rational matching_value;
  HalfVector fractional;
  Rational fractional_value;
  DualCover dual;
};

// Decides stability and returns re-validated certificates for both
// verdicts. Every emitted object is checked from scratch (feasibility,
// dual feasibility, objectives, slackness) before being returned.
StabilityCheck is_stable(const CapGraph& g);

enum class StabKind { kCapacity, kEdge };

// Outcome of a stabilization routine. The solution is a sorted vertex
// multiset (capacity mode) or sorted edge id set (edge mode) over the input
// graph; stabilized is the graph after applying it. The matching and dual
// certify stability of the stabilized graph: equal objectives plus
// complementary slackness, both re-validated before return.
struct StabReport {
  StabKind kind = StabKind::kCapacity;
  std::vector<int> solution;
  int size = 0;
  // Proven floor on the size of any solution of this kind; zero when the
  // cycle count backing it was not certified.
  int lower_bound = 0;
  CapGraph stabilized;
  CMatching matching;
  DualCover dual;
  Rational weight_before;  // maximum c-matching weight of the input
  Rational weight_after;   // same for the stabilized graph
};

// Stabilizes by unit capacity cuts: picks, on each fractional odd cycle of
// a cycle-minimal basic optimum, the cycle vertex with the smallest dual
// value (lowest id on ties) and lowers its capacity by one. The solution
// is a plain set, its size equals the cycle count of the optimum (the
// certified minimum possible in exact mode), and the stabilized graph
// keeps at least two thirds of the original matching weight. Exact mode
// consults the enumeration oracle when needed and propagates its
// ScaleError.
StabReport capacity_stabilizer(const CapGraph& g,
                               GammaMode mode = GammaMode::kExact,
                               int oracle_max_edges = kBruteBasicEdgeBound);

// Stabilizes by edge removal: takes the same vertex choices as
// capacity_stabilizer and removes, around each chosen vertex, every edge
// that the optimum does not match integrally. At most max_degree edges per
// chosen vertex are removed, and the stabilized graph again keeps at least
// two thirds of the original weight. The certificate dual is constructed
// by shifting each chosen vertex's dual value onto its surviving matched
// edges, then re-validated.
StabReport edge_stabilizer_approx(const CapGraph& g,
                                  GammaMode mode = GammaMode::kExact,
                                  int oracle_max_edges = kBruteBasicEdgeBound);

struct LowerBounds {
  int capacity_lb = 0;  // any capacity solution has at least this many cuts
  int edge_lb = 0;      // any edge solution removes at least this many edges
};

// Size floors for both stabilizer kinds, from the certified minimum cycle
// count: the capacity bound equals it, the edge bound is half of it rounded
// up, raised to the full count when all weights are 1. Throws ScaleError
// when certification needs the enumeration oracle above its bound.
LowerBounds lower_bounds(const CapGraph& g,
                         int oracle_max_edges = kBruteBasicEdgeBound);

// Greedily drops solution elements while the result still stabilizes,
// yielding an inclusion-wise minimal solution. Drop attempts run from the
// highest id down, so low ids are kept preferentially and the result is
// reproducible. Throws InvalidInstance when the input does not stabilize
// the graph.
std::vector<int> minimalize_stabilizer(const CapGraph& g, StabKind kind,
                                       std::vector<int> solution);

// Applies a solution to the graph: lowers capacities once per multiset
// entry, or deletes the listed edges. Throws InvalidInstance on invalid
// ids or when a capacity would drop below zero.
CapGraph apply_stabilizer(const CapGraph& g, StabKind kind,
                          const std::vector<int>& solution);

}  // namespace capstab
