#pragma once

#include "graph.hpp"
#include "halfvec.hpp"
#include "oracle.hpp"

namespace capstab {

enum class GammaMode { kHeuristic, kExact };

// A basic maximum-weight vector chosen to carry few fractional cycles.
struct MinCycleResult {
  HalfVector x;
  int cycle_count = 0;
  // True when cycle_count provably equals the minimum over all basic
  // maximum-weight vectors: either it is zero, or exhaustive enumeration
  // confirmed it.
  bool certified = false;
};

// Searches for a basic maximum-weight fractional c-matching with as few
// fractional odd cycles as possible.
//
// Heuristic mode starts from the optimizer's basic optimum and repeatedly
// applies weight-preserving half-step circuit moves (classes C2, C4, C5
// over edges tight under the optimal dual) while they strictly reduce the
// cycle count, stopping at a local minimum. The result is always basic and
// maximum-weight; certified only when the count reaches zero.
//
// Exact mode additionally enumerates every basic optimum through the
// oracle when the heuristic leaves a nonzero count, so the returned count
// is the true minimum and certified is always true. Throws ScaleError when
// that enumeration would exceed oracle_max_edges.
MinCycleResult min_cycle_optimum(const CapGraph& g, GammaMode mode,
                                 int oracle_max_edges = kBruteBasicEdgeBound);

// Minimum number of fractional odd cycles over all basic maximum-weight
// vectors, by exhaustive enumeration. Throws ScaleError above max_edges.
int gamma_exact(const CapGraph& g, int max_edges = kBruteBasicEdgeBound);

}  // namespace capstab
