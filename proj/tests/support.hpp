#pragma once

#include <cstdint>
#include <vector>

#include "graph.hpp"

namespace capstab::testing {

// Shared instance corpus for the unit and acceptance suites. The corpus is
// deterministic: same binary, same instances, in the same order.
//
// weighted: every connected graph shape on at most kSuiteMaxVertices
//   vertices (one representative per isomorphism class), each instantiated
//   kWeightedAssignments times with capacities drawn from {1, 2} and
//   weights from {1, 2, 3} by a seeded generator.
// unit: the same shapes with every weight fixed to 1 and capacities again
//   seeded from {1, 2}, kUnitAssignments instances per shape.
// random: kRandomCount seeded random graphs with 2 to kRandomMaxVertices
//   vertices and at most kRandomMaxEdges edges (kept within the exhaustive
//   oracles' bounds), capacities up to 2 and weights up to 3.
inline constexpr int kSuiteMaxVertices = 6;
inline constexpr int kWeightedAssignments = 20;
inline constexpr int kUnitAssignments = 4;
inline constexpr int kRandomCount = 500;
inline constexpr int kRandomMaxVertices = 8;
inline constexpr int kRandomMaxEdges = 13;

struct Suite {
  std::vector<CapGraph> weighted;
  std::vector<CapGraph> unit;
  std::vector<CapGraph> random;
};

// Builds the corpus on first use and caches it.
const Suite& shared_suite();

// Copy of g with every edge weight replaced by 1.
CapGraph with_unit_weights(const CapGraph& g);

// True when every edge weight equals 1.
bool unit_weighted(const CapGraph& g);

// All feasible c-matchings of g, as edge-id masks in ascending order.
// Intended for small graphs; the caller bounds the edge count.
std::vector<std::uint32_t> all_c_matching_masks(const CapGraph& g);

CMatching matching_from_mask(const CapGraph& g, std::uint32_t mask);

}  // namespace capstab::testing
