#include "halfvec.hpp"

#include <algorithm>

namespace capstab {

HalfVector HalfVector::from_matching(const CMatching& m) {
  HalfVector x(m.in.size());
  for (std::size_t e = 0; e < m.in.size(); ++e)
    if (m.in[e]) x.set_halves(static_cast<EdgeId>(e), 2);
  return x;
}

bool HalfVector::is_integral() const {
  return std::none_of(halves_.begin(), halves_.end(),
                      [](std::uint8_t h) { return h == 1; });
}

CMatching HalfVector::to_matching() const {
  CMatching m;
  m.in.resize(halves_.size(), 0);
  for (std::size_t e = 0; e < halves_.size(); ++e) {
    if (halves_[e] == 1)
      throw InvalidInstance("to_matching on a fractional vector");
    m.in[e] = halves_[e] == 2;
  }
  return m;
}

int HalfVector::degree_halves(const CapGraph& g, VertexId v) const {
  int total = 0;
  for (EdgeId e : g.incident(v)) total += halves_[e];
  return total;
}

Rational HalfVector::weight(const CapGraph& g) const {
  Rational total = 0;
  for (std::size_t e = 0; e < halves_.size(); ++e)
    if (halves_[e])
      total += g.edge(static_cast<EdgeId>(e)).weight * halves_[e];
  return total / 2;
}

bool is_feasible(const CapGraph& g, const HalfVector& x, std::string* why) {
  if (x.size() != static_cast<std::size_t>(g.edge_count())) {
    if (why) *why = "vector length does not match edge count";
    return false;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (x.halves(e) > 2) {
      if (why) *why = "entry above 1 on edge " + g.edge_label(e);
      return false;
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (x.degree_halves(g, v) > 2 * g.capacity(v)) {
      if (why) *why = "capacity exceeded at vertex " + g.vertex_name(v);
      return false;
    }
  }
  return true;
}

std::vector<VertexId> SupportDecomposition::cycle_vertices(
    const CapGraph& g, const std::vector<EdgeId>& cycle) {
  std::vector<VertexId> verts;
  verts.reserve(cycle.size());
  for (std::size_t j = 0; j < cycle.size(); ++j) {
    const Edge& prev = g.edge(cycle[(j + cycle.size() - 1) % cycle.size()]);
    const Edge& cur = g.edge(cycle[j]);
    VertexId shared = (cur.u == prev.u || cur.u == prev.v) ? cur.u : cur.v;
    verts.push_back(shared);
  }
  return verts;
}

SupportDecomposition decompose_support(const CapGraph& g, const HalfVector& x) {
  SupportDecomposition out;
  out.basic = true;

  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (x.halves(e) == 2) out.matched.push_back(e);

  // Number of incident half-edges per vertex; disjoint cycles require it to
  // be 0 or 2 everywhere.
  std::vector<int> frac_deg(g.vertex_count(), 0);
  std::vector<std::vector<EdgeId>> frac_adj(g.vertex_count());
  bool any_frac = false;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (x.halves(e) != 1) continue;
    any_frac = true;
    frac_deg[g.edge(e).u] += 1;
    frac_deg[g.edge(e).v] += 1;
    frac_adj[g.edge(e).u].push_back(e);
    frac_adj[g.edge(e).v].push_back(e);
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (frac_deg[v] != 0 && frac_deg[v] != 2) {
      out.basic = false;
      out.why_not = "half-edges do not form disjoint cycles at vertex " +
                    g.vertex_name(v);
      return out;
    }
  }
  if (!any_frac) return out;

  // Trace each cycle from its smallest vertex, stepping first across the
  // incident fractional edge with the smaller far endpoint.
  std::vector<char> used(g.edge_count(), 0);
  for (VertexId start = 0; start < g.vertex_count(); ++start) {
    if (frac_deg[start] != 2) continue;
    if (used[frac_adj[start][0]]) continue;

    EdgeId first = frac_adj[start][0];
    EdgeId second = frac_adj[start][1];
    if (g.other_end(second, start) < g.other_end(first, start))
      std::swap(first, second);
    std::vector<EdgeId> cycle;
    VertexId at = start;
    EdgeId via = first;
    do {
      cycle.push_back(via);
      used[via] = 1;
      at = g.other_end(via, at);
      via = frac_adj[at][0] == via ? frac_adj[at][1] : frac_adj[at][0];
    } while (at != start);

    if (cycle.size() % 2 == 0) {
      out.basic = false;
      out.why_not =
          "even cycle of half-edges through vertex " + g.vertex_name(start);
      return out;
    }
    for (VertexId v : SupportDecomposition::cycle_vertices(g, cycle)) {
      if (x.degree_halves(g, v) != 2 * g.capacity(v)) {
        out.basic = false;
        out.why_not = "cycle vertex " + g.vertex_name(v) + " is not saturated";
        return out;
      }
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

bool is_basic(const CapGraph& g, const HalfVector& x, std::string* why) {
  std::string feas_why;
  if (!is_feasible(g, x, &feas_why)) {
    if (why) *why = "infeasible: " + feas_why;
    return false;
  }
  SupportDecomposition d = decompose_support(g, x);
  if (!d.basic && why) *why = d.why_not;
  return d.basic;
}

Rational DualCover::objective(const CapGraph& g) const {
  Rational total = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    total += g.capacity(v) * y[v];
  for (EdgeId e = 0; e < g.edge_count(); ++e) total += z[e];
  return total;
}

bool is_dual_feasible(const CapGraph& g, const DualCover& dual,
                      std::string* why) {
  if (dual.y.size() != static_cast<std::size_t>(g.vertex_count()) ||
      dual.z.size() != static_cast<std::size_t>(g.edge_count())) {
    if (why) *why = "dual vector lengths do not match the graph";
    return false;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (dual.y[v] < 0) {
      if (why) *why = "negative y at vertex " + g.vertex_name(v);
      return false;
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (dual.z[e] < 0) {
      if (why) *why = "negative z on edge " + g.edge_label(e);
      return false;
    }
    const Edge& ed = g.edge(e);
    if (dual.y[ed.u] + dual.y[ed.v] + dual.z[e] < ed.weight) {
      if (why) *why = "cover constraint violated on edge " + g.edge_label(e);
      return false;
    }
  }
  return true;
}

std::vector<std::string> check_complementary_slackness(const CapGraph& g,
                                                       const HalfVector& x,
                                                       const DualCover& dual) {
  std::vector<std::string> violations;
  std::string why;
  if (!is_feasible(g, x, &why))
    violations.push_back("primal infeasible: " + why);
  if (!is_dual_feasible(g, dual, &why)) {
    violations.push_back("dual infeasible: " + why);
    return violations;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (x.halves(e) > 0 &&
        dual.y[ed.u] + dual.y[ed.v] + dual.z[e] != ed.weight)
      violations.push_back("edge " + g.edge_label(e) +
                           " carries weight but its cover is not tight");
    if (dual.z[e] > 0 && x.halves(e) != 2)
      violations.push_back("z positive on edge " + g.edge_label(e) +
                           " but x is below 1");
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (dual.y[v] > 0 && x.degree_halves(g, v) != 2 * g.capacity(v))
      violations.push_back("y positive at vertex " + g.vertex_name(v) +
                           " but the vertex is not saturated");
  }
  return violations;
}

}  // namespace capstab
