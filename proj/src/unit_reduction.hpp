#pragma once

#include <vector>

#include "graph.hpp"
#include "halfvec.hpp"

namespace capstab {

// Capacity-to-unit transform that replaces each vertex by capacity-many
// copies and each edge by the complete bipartite graph between the two copy
// sets. Kept as a negative fixture: it does not preserve stability (a
// capacitated edge can be matched once, its copy bundle up to min(c_u, c_v)
// times), and the test suite pins an instance where it flips the verdict.
struct VertexCopyExpansion {
  CapGraph graph;
  std::vector<std::vector<VertexId>> copies;  // original vertex -> copy ids
  std::vector<VertexId> origin_vertex;        // expanded vertex -> original
  std::vector<EdgeId> origin_edge;            // expanded edge -> original
};

VertexCopyExpansion naive_vertex_copy_expansion(const CapGraph& g);

// Value-preserving capacity-to-unit transform. Each edge e = uv becomes a
// three-edge gadget path u - p_u - p_v - v, every gadget edge of weight w_e,
// with p_u adjacent to all copies of u and p_v to all copies of v; each
// vertex becomes capacity-many copies. The reduced graph has unit
// capacities, sum(c_v) + 2|E| vertices, and satisfies
//   max weight of a c-matching in G  = max matching weight in reduced - w(E)
// and likewise for the fractional optima; fractional odd cycle counts of
// basic optima carry over unchanged (see the translators below).
struct UnitReduction {
  CapGraph original;
  CapGraph graph;  // the reduced graph, all capacities 1
  std::vector<std::vector<VertexId>> copies;  // original vertex -> copy ids
  std::vector<VertexId> port_u;  // per original edge: gadget vertex at u side
  std::vector<VertexId> port_v;  // per original edge: gadget vertex at v side
  std::vector<EdgeId> middle;    // per original edge: edge port_u - port_v
  std::vector<std::vector<EdgeId>> side_u;  // per original edge: u_i - port_u
  std::vector<std::vector<EdgeId>> side_v;  // per original edge: port_v - v_j
  std::vector<EdgeId> origin_edge;  // reduced edge -> original edge
  Rational weight_offset;           // w(E), the value shift of the transform
};

UnitReduction to_unit_capacity(const CapGraph& g);

// Maps a basic maximum-weight vector on the reduced graph back to one on
// the original graph, gadget by gadget: middle edge full means x_e = 0,
// both side edges full means x_e = 1, all three at a half means x_e = 1/2.
// The two remaining patterns a basic optimum can show (one full side edge
// with an empty far port; a port passing a fractional cycle through two
// copies) are first rewritten into the three above without changing the
// weight or the number of fractional cycles. Throws InvalidInstance when a
// gadget fits no pattern, which signals a non-basic or non-optimal input.
// The result satisfies weight(x) = weight(xhat) - w(E) (asserted) and has
// exactly as many fractional cycles as the input.
HalfVector translate_from_unit(const UnitReduction& r, const HalfVector& xhat);

// Maps a basic vector on the original graph to one on the reduced graph
// with weight raised by w(E) and the same number of fractional cycles.
// Copies are assigned deterministically (cycles first, then matched edges,
// in id order). Throws InvalidInstance if x is not basic.
HalfVector translate_to_unit(const UnitReduction& r, const HalfVector& x);

}  // namespace capstab
