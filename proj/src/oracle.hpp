#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "halfvec.hpp"

namespace capstab {

// Exhaustive ground-truth routines. Everything here is deliberately naive;
// the point is independence from the production algorithms, so tests can
// compare two unrelated routes to the same number. Each routine refuses
// inputs above its edge bound with a ScaleError instead of silently
// truncating. The default bounds keep a full run over the desk-scale test
// suites in seconds; callers may raise them explicitly.
inline constexpr int kBruteMatchingEdgeBound = 14;
inline constexpr int kBruteFractionalEdgeBound = 15;
inline constexpr int kBruteBasicEdgeBound = 12;
inline constexpr int kBrutePolytopeEdgeBound = 8;

struct BruteMatchingResult {
  CMatching matching;
  Rational value;
};

// Maximum-weight c-matching over all capacity-feasible edge subsets.
// Ties are broken toward the lexicographically smallest edge id set.
BruteMatchingResult brute_max_c_matching(const CapGraph& g,
                                         int max_edges = kBruteMatchingEdgeBound);

// Maximum of w^T x over feasible half-integral vectors, which equals the
// fractional optimum because some optimal extreme point is half-integral.
// Value-only and branch-pruned, so it handles a few more edges than the
// full enumeration below.
Rational brute_fractional_value(const CapGraph& g,
                                int max_edges = kBruteFractionalEdgeBound);

// Stability ground truth: integral and fractional optima coincide.
bool brute_is_stable(const CapGraph& g,
                     int max_edges = kBruteFractionalEdgeBound);

struct BasicOptima {
  Rational value;                  // fractional optimum
  std::vector<HalfVector> optima;  // every basic optimal vector
  int min_cycles = 0;              // least fractional cycle count among them
  HalfVector min_cycle_witness;    // an optimum attaining min_cycles
};

// Enumerates every basic feasible half-integral vector of maximum weight.
BasicOptima brute_basic_optima(const CapGraph& g,
                               int max_edges = kBruteBasicEdgeBound);

// Same result set as brute_basic_optima, but restricted by complementary
// slackness against the given feasible dual: non-tight edges stay at 0,
// z-positive edges at 1, y-positive vertices exactly saturated. When the
// dual is optimal this enumerates exactly the basic optima (every returned
// vector is re-verified by slackness, so a suboptimal dual yields an empty
// set, never a wrong one). Returns nullopt if the search exceeds
// node_limit. This pushes exact cycle-count ground truth to instances
// whose plain 3^|E| scan is out of reach.
std::optional<BasicOptima> guided_basic_optima(const CapGraph& g,
                                               const DualCover& dual,
                                               long long node_limit);

struct CapacityStabilizerWitness {
  int size = 0;
  std::vector<VertexId> vertices;  // sorted; a vertex may repeat
};

// Smallest multiset of unit capacity reductions making the graph stable,
// by breadth-first search over total cardinality; multiplicity per vertex
// is capped at its capacity. First witness in lexicographic order.
CapacityStabilizerWitness brute_min_capacity_stabilizer(
    const CapGraph& g, int max_edges = kBruteFractionalEdgeBound);

struct EdgeStabilizerWitness {
  int size = 0;
  std::vector<EdgeId> edges;  // sorted
};

// Smallest edge set whose removal makes the graph stable, by ascending
// subset size; with weight_preserving, the removal must also keep the
// maximum c-matching weight unchanged. First witness in lex order.
EdgeStabilizerWitness brute_min_edge_stabilizer(
    const CapGraph& g, bool weight_preserving,
    int max_edges = kBruteFractionalEdgeBound);

struct PolytopeVertexGraph {
  // Every vertex of the fractional c-matching polytope, in lexicographic
  // order of the half-unit vectors.
  std::vector<HalfVector> vertices;
  // Index pairs (i < j) whose vertices share |E|-1 linearly independent
  // tight constraints, i.e. lie on a common polytope edge.
  std::vector<std::pair<int, int>> adjacency;
};

// Enumerates polytope vertices by the definition: a feasible point is a
// vertex iff its tight constraint rows have full column rank. Adjacency by
// the rank of the shared tight rows. Exact rational elimination throughout;
// this is the independent check of the combinatorial vertex test is_basic.
PolytopeVertexGraph enumerate_polytope_vertices(
    const CapGraph& g, int max_edges = kBrutePolytopeEdgeBound);

// Tight-row rank test for a single feasible half vector, as used by the
// enumeration above.
bool oracle_is_vertex(const CapGraph& g, const HalfVector& x);

// Shared-tight-row rank test for a pair of polytope vertices.
bool oracle_adjacent(const CapGraph& g, const HalfVector& a,
                     const HalfVector& b);

}  // namespace capstab
