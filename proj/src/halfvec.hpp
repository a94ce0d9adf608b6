#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graph.hpp"

namespace capstab {

// Half-integral edge vector x with entries in {0, 1/2, 1}, stored as half
// units (0, 1, 2). Every optimizer in this library returns vectors of this
// shape; the vertex characterization in is_basic justifies the restriction.
class HalfVector {
 public:
  HalfVector() = default;
  explicit HalfVector(std::size_t edge_count, std::uint8_t fill_halves = 0)
      : halves_(edge_count, fill_halves) {}

  static HalfVector from_matching(const CMatching& m);

  std::size_t size() const { return halves_.size(); }

  // Entry for edge e in half units: 0, 1, or 2.
  std::uint8_t halves(EdgeId e) const { return halves_[e]; }
  void set_halves(EdgeId e, std::uint8_t h) { halves_[e] = h; }

  Rational value(EdgeId e) const { return Rational(halves_[e], 2); }

  bool is_integral() const;

  // Matching view; throws unless is_integral().
  CMatching to_matching() const;

  // x(delta(v)) in half units.
  int degree_halves(const CapGraph& g, VertexId v) const;

  // w^T x.
  Rational weight(const CapGraph& g) const;

  bool operator==(const HalfVector& other) const = default;

 private:
  std::vector<std::uint8_t> halves_;
};

// Checks 0 <= x <= 1 (structural) and x(delta(v)) <= c_v for every vertex.
bool is_feasible(const CapGraph& g, const HalfVector& x,
                 std::string* why = nullptr);

// Support structure of a half-integral vector: the fractional edges split
// into cycles, the integral ones into a matched set.
struct SupportDecomposition {
  // Fractional odd cycles C(x). Each cycle is a closed edge sequence;
  // consecutive entries share a vertex. A cycle starts at its smallest
  // vertex and runs toward that vertex's smaller-id fractional neighbor,
  // and cycles are sorted by smallest vertex, so the decomposition of a
  // given vector is unique.
  std::vector<std::vector<EdgeId>> cycles;
  // M(x): edges with x_e = 1.
  std::vector<EdgeId> matched;
  // Whether x passes the vertex pattern test (see is_basic).
  bool basic = false;
  // Human-readable reason when basic is false.
  std::string why_not;

  // Vertices of a cycle, aligned with its edge sequence: vertex j is shared
  // by edges j-1 and j (mod length).
  static std::vector<VertexId> cycle_vertices(const CapGraph& g,
                                              const std::vector<EdgeId>& cycle);
};

// Decomposes the support of x. Cycles/matched are populated whenever the
// half-edges do form disjoint cycles; basic additionally requires odd
// lengths and saturated cycle vertices.
SupportDecomposition decompose_support(const CapGraph& g, const HalfVector& x);

// Vertex test for the fractional c-matching polytope: x is an extreme point
// iff it is half-integral, its half-edges form vertex-disjoint odd cycles,
// and every vertex on such a cycle is saturated. Requires x feasible.
bool is_basic(const CapGraph& g, const HalfVector& x,
              std::string* why = nullptr);

// Fractional vertex cover, the feasible points of
//   min c^T y + 1^T z  s.t.  y_u + y_v + z_uv >= w_uv, y >= 0, z >= 0.
struct DualCover {
  std::vector<Rational> y;  // per vertex
  std::vector<Rational> z;  // per edge

  Rational objective(const CapGraph& g) const;
};

bool is_dual_feasible(const CapGraph& g, const DualCover& dual,
                      std::string* why = nullptr);

// Complementary slackness between primal x and dual (y, z):
//   x_e > 0  implies  y_u + y_v + z_e = w_e
//   y_v > 0  implies  x(delta(v)) = c_v
//   z_e > 0  implies  x_e = 1
// Returns every violated clause (with names); an empty list means x and
// (y, z) are feasible and complementary, hence both optimal.
std::vector<std::string> check_complementary_slackness(const CapGraph& g,
                                                       const HalfVector& x,
                                                       const DualCover& dual);

}  // namespace capstab
