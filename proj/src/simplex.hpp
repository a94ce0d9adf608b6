#pragma once

#include "graph.hpp"
#include "halfvec.hpp"

namespace capstab {

// Optimal pair for the fractional relaxation
//   max  w^T x   s.t.  x(delta(v)) <= c_v,  0 <= x <= 1
// and its dual, the fractional capacitated vertex cover
//   min  c^T y + 1^T z   s.t.  y_u + y_v + z_uv >= w_uv,  y >= 0, z >= 0.
struct LpResult {
  HalfVector primal;    // extreme point, see is_basic
  DualCover dual;
  Rational primal_value;
  Rational dual_value;  // equals primal_value
};

// Exact rational solve of the pair above. The primal comes back as an
// extreme point (half-integral, fractional part on disjoint saturated odd
// cycles) and the dual is complementary to it; both facts are re-verified
// before returning. All tie-breaks are deterministic, so equal graphs give
// equal results.
LpResult solve_fractional(const CapGraph& g);

// Repairs a feasible half-integral point that fails is_basic by stepping
// half a circuit at a time in a weight-non-decreasing direction. Fractional
// even cycles and open fractional paths are the repairable defects; they
// are also the only ones a degenerate optimizer stop could leave behind.
// Anything else (for example an unsaturated fractional odd cycle) throws
// std::logic_error.
HalfVector make_basic(const CapGraph& g, HalfVector x);

}  // namespace capstab
