#pragma once

#include <vector>

#include "graph.hpp"
#include "halfvec.hpp"

namespace capstab {

// A walk recorded as its edge sequence plus the declared start vertex. The
// start disambiguates direction; the rest of the traversal is forced because
// consecutive edges must share the vertex the walk is currently at. Edges may
// repeat (walks, not trails); kappa(e) counts occurrences.
struct WalkRecord {
  VertexId start = -1;
  VertexId end = -1;
  std::vector<EdgeId> steps;

  // Validates that steps form a walk from start and fills in end.
  // Throws InvalidInstance when a step does not continue the walk.
  static WalkRecord trace(const CapGraph& g, VertexId start,
                          std::vector<EdgeId> steps);

  std::size_t length() const { return steps.size(); }
  bool closed() const { return start == end; }

  // True when no edge repeats.
  bool is_trail() const;

  // Occurrence count per edge id, size edge_count.
  std::vector<int> kappa(std::size_t edge_count) const;

  // The vertices visited, length |steps| + 1, starting at start.
  std::vector<VertexId> vertex_sequence(const CapGraph& g) const;

  // "u -e1- v -e2- w" rendering for diagnostics and witnesses.
  std::string describe(const CapGraph& g) const;
};

struct WalkFlags {
  bool alternating = false;
  bool augmenting = false;
  bool proper = false;
  bool feasible = false;
};

// Classifies W against matching M.
//   alternating: edges alternate between M and its complement.
//   augmenting:  alternating and the non-matched occurrences outweigh the
//                matched ones, each edge counted kappa(e) times.
//   proper:      toggling the odd-kappa edges of W in M yields a c-matching.
//   feasible:    some eps > 0 makes epsilon_augmentation a fractional
//                c-matching.
// Proper and feasible only apply to alternating walks and are reported false
// otherwise. On trails both are decided by closed-form endpoint conditions;
// a repeated edge can break the endpoint shortcut for properness (interior
// degrees may overflow), so non-trail walks fall back to constructing the
// toggle directly. The feasibility conditions survive repetition because the
// eps contributions at every interior visit cancel in pairs.
WalkFlags classify_walk(const CapGraph& g, const CMatching& m,
                        const WalkRecord& w);

// The vector x^{M/W}(eps): 1 - kappa(e) eps on matched edges, kappa(e) eps on
// unmatched ones; edges outside M and W therefore sit at 1 and 0. Requires W
// alternating and eps > 0; throws InvalidInstance otherwise.
std::vector<Rational> epsilon_augmentation(const CapGraph& g,
                                           const CMatching& m,
                                           const WalkRecord& w,
                                           const Rational& eps);

// M toggled along W (edges with odd kappa switch sides). Requires
// classify_walk(...).proper; throws InvalidInstance otherwise. Applying the
// same walk twice returns the original matching.
CMatching apply_walk(const CapGraph& g, const CMatching& m,
                     const WalkRecord& w);

enum class RoundMode { kExposing, kCovering };

// Rounds one fractional cycle of x to integral values by alternating 0/1
// around the cycle starting at v. Exposing puts the zeros next to v, so
// x(delta(v)) drops by exactly 1; covering is the complementary pattern and
// raises x(delta(v)) by 1. Every other cycle vertex keeps its degree. The
// cycle must consist of half-edges of x and v must lie on it.
HalfVector alternate_round(const CapGraph& g, const HalfVector& x,
                           const std::vector<EdgeId>& cycle, VertexId v,
                           RoundMode mode);

}  // namespace capstab
