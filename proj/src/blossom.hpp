#pragma once

#include <vector>

#include "graph.hpp"

namespace capstab {

struct UnitEdge {
  int u;
  int v;
  long long weight;
};

struct BlossomResult {
  std::vector<int> mate;      // vertex -> partner, -1 when single
  std::vector<char> matched;  // per input edge
  long long value = 0;
};

// Maximum-weight matching on a unit-capacity multigraph with integer
// weights, by the classic O(V^3) primal-dual blossom algorithm. The output
// is certified against the final dual solution before returning; a failed
// certificate throws std::logic_error. Deterministic for a fixed edge
// order. Negative-weight edges are never matched.
BlossomResult max_weight_matching(int vertex_count,
                                  const std::vector<UnitEdge>& edges);

}  // namespace capstab
