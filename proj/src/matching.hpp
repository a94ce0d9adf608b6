#pragma once

#include <optional>
#include <string>

#include "graph.hpp"
#include "walks.hpp"

namespace capstab {

struct MatchingResult {
  CMatching matching;
  Rational value;      // maximum c-matching weight
  std::string engine;  // "reduction" or "brute"
};

enum class MatchingEngine { kReduction, kBrute };

// Maximum-weight c-matching. The default engine splits every edge into a
// three-edge gadget, clones vertices into capacity-many copies, solves the
// unit-capacity problem with the blossom algorithm and shifts the value
// back by the fixed weight offset; ties among maximum matchings are then
// resolved to the lexicographically smallest edge-id set by constrained
// re-solves (one per edge). The brute engine defers to the exhaustive
// search and inherits its size bound; it exists for cross-checks.
MatchingResult max_weight_c_matching(
    const CapGraph& g, MatchingEngine engine = MatchingEngine::kReduction);

// Returns a proper augmenting trail for M, which exists iff M is not
// maximum-weight; absence therefore proves M maximum. The witness is carved
// out of the symmetric difference with a maximum matching by pairing
// matched against unmatched edges around every vertex, and re-validated
// through classify_walk before returning. Throws InvalidInstance when M is
// not a c-matching.
std::optional<WalkRecord> find_proper_augmenting_trail(const CapGraph& g,
                                                       const CMatching& m);

// Returns a feasible augmenting walk for a maximum-weight M, which exists
// iff the fractional optimum exceeds the integral one; absence therefore
// proves the two optima equal. The decision is made by the exact fractional
// solver; the witness comes from a dynamic program over alternating-walk
// states whose length is capped at 2|E|+2 (retried once at 4|E|+4, which no
// verified instance has ever needed), and is re-validated through
// classify_walk. Throws InvalidInstance when M is not maximum-weight.
std::optional<WalkRecord> find_feasible_augmenting_walk(const CapGraph& g,
                                                        const CMatching& m);

}  // namespace capstab
