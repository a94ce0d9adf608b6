#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "halfvec.hpp"

namespace capstab {

// The five families of potential edge directions of the fractional
// c-matching polytope. Coefficient vectors live in {-2,...,2}^E:
//   kC1: even cycle, entries +-1, balanced at every vertex.
//   kC2: odd cycle, entries +-1, balanced everywhere except one vertex w.
//   kC3: path, entries +-1, balanced at interior vertices.
//   kC4: odd cycle (+-1) plus a pendant path (+-2) leaving from a cycle
//        vertex, balanced at every vertex that meets two support edges.
//   kC5: two odd cycles (+-1) joined by a path (+-2) or sharing a single
//        vertex, balanced at every vertex.
enum class CircuitClass { kC1 = 1, kC2, kC3, kC4, kC5 };

std::string to_string(CircuitClass cls);

struct Circuit {
  std::vector<int> coeffs;  // per edge id
  CircuitClass cls = CircuitClass::kC1;
  // Witnessing structure. Cycle edge lists follow the convention of
  // SupportDecomposition: consecutive edges share a vertex, wrapping around.
  std::vector<EdgeId> cycle;   // kC1/kC2/kC4 cycle, kC5 first cycle
  std::vector<EdgeId> cycle2;  // kC5 second cycle
  std::vector<EdgeId> path;    // kC3; for kC4/kC5 ordered away from `cycle`
  // kC2: the unbalanced vertex w. kC4: the free end of the path.
  VertexId special = -1;
  // True when the input vector was divided by a common factor first.
  bool rescaled = false;
};

// Decides whether an integer edge vector is one of the five circuit shapes
// and returns its class plus the witnessing subgraph, or rejects with the
// first violated condition. Vectors with a common factor are scaled to
// co-prime form before classification.
std::optional<Circuit> classify_circuit(const CapGraph& g,
                                        std::vector<int> coeffs,
                                        std::string* why = nullptr);

struct CircuitApplication {
  std::optional<HalfVector> result;
  std::string violation;  // set instead of result when x + alpha g leaves P
};

// x + alpha * g for alpha in {1/2, 1}; any other alpha throws
// InvalidInstance. Reports the first violated bound (edge outside [0,1] or
// vertex above capacity) instead of a result when the move is infeasible.
CircuitApplication apply_circuit(const CapGraph& g, const HalfVector& x,
                                 const Circuit& circuit, const Rational& alpha);

// A difference y - x that is compatible with the two points being adjacent
// extreme points: alpha times a co-prime circuit, with the class restricted
// by alpha and the possible changes of the fractional odd cycle count listed
// in allowed_cycle_deltas (alpha=1 keeps the count; alpha=1/2 keeps it for
// kC1, moves it by one for kC2/kC4, and by 0 or 2 for kC5).
struct AdjacencyStep {
  Rational alpha;
  Circuit circuit;
  std::vector<int> allowed_cycle_deltas;
};

std::optional<AdjacencyStep> vertex_difference(const CapGraph& g,
                                               const HalfVector& x,
                                               const HalfVector& y,
                                               std::string* why = nullptr);

// All circuit vectors supported on G, in canonical sign (first nonzero
// coefficient by edge id positive), built by enumerating the witnessing
// subgraphs. Exhaustive test helper; throws ScaleError above 9 edges.
std::vector<Circuit> enumerate_circuits(const CapGraph& g);

}  // namespace capstab
