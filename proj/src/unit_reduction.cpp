#include "unit_reduction.hpp"

#include <string>
#include <unordered_set>
#include <utility>

namespace capstab {

namespace {

// Reserves a printable name, extending with apostrophes if the candidate
// collides with a name already taken.
std::string claim_name(std::unordered_set<std::string>& used,
                       std::string candidate) {
  while (!used.insert(candidate).second) candidate += "'";
  return candidate;
}

std::vector<std::string> copy_names(const CapGraph& g,
                                    std::unordered_set<std::string>& used,
                                    VertexId v) {
  std::vector<std::string> out;
  long long c = g.capacity(v);
  if (c == 1) {
    out.push_back(claim_name(used, g.vertex_name(v)));
    return out;
  }
  for (long long i = 1; i <= c; ++i)
    out.push_back(
        claim_name(used, g.vertex_name(v) + "." + std::to_string(i)));
  return out;
}

}  // namespace

VertexCopyExpansion naive_vertex_copy_expansion(const CapGraph& g) {
  VertexCopyExpansion out;
  out.copies.resize(g.vertex_count());
  std::vector<std::string> names;
  std::vector<long long> caps;
  std::unordered_set<std::string> used;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (std::string& name : copy_names(g, used, v)) {
      out.copies[v].push_back(static_cast<VertexId>(names.size()));
      out.origin_vertex.push_back(v);
      names.push_back(std::move(name));
      caps.push_back(1);
    }
  }
  std::vector<std::tuple<int, int, Rational>> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    for (VertexId a : out.copies[ed.u])
      for (VertexId b : out.copies[ed.v]) {
        edges.emplace_back(a, b, ed.weight);
        out.origin_edge.push_back(e);
      }
  }
  out.graph =
      CapGraph::build(std::move(names), std::move(caps), std::move(edges));
  return out;
}

UnitReduction to_unit_capacity(const CapGraph& g) {
  UnitReduction r;
  r.original = g;
  r.weight_offset = g.total_weight();
  r.copies.resize(g.vertex_count());

  std::vector<std::string> names;
  std::vector<long long> caps;
  std::unordered_set<std::string> used;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (std::string& name : copy_names(g, used, v)) {
      r.copies[v].push_back(static_cast<VertexId>(names.size()));
      names.push_back(std::move(name));
      caps.push_back(1);
    }
  }
  std::vector<std::tuple<int, int, Rational>> edges;
  auto add_edge = [&](VertexId a, VertexId b, const Rational& w, EdgeId from) {
    EdgeId id = static_cast<EdgeId>(edges.size());
    edges.emplace_back(a, b, w);
    r.origin_edge.push_back(from);
    return id;
  };
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    std::string tag = "e" + std::to_string(e);
    VertexId pu = static_cast<VertexId>(names.size());
    names.push_back(claim_name(used, tag + "u"));
    caps.push_back(1);
    VertexId pv = static_cast<VertexId>(names.size());
    names.push_back(claim_name(used, tag + "v"));
    caps.push_back(1);
    r.port_u.push_back(pu);
    r.port_v.push_back(pv);
    r.side_u.emplace_back();
    for (VertexId ui : r.copies[ed.u])
      r.side_u.back().push_back(add_edge(ui, pu, ed.weight, e));
    r.middle.push_back(add_edge(pu, pv, ed.weight, e));
    r.side_v.emplace_back();
    for (VertexId vj : r.copies[ed.v])
      r.side_v.back().push_back(add_edge(pv, vj, ed.weight, e));
  }
  r.graph =
      CapGraph::build(std::move(names), std::move(caps), std::move(edges));
  return r;
}

namespace {

int sum_halves(const HalfVector& x, const std::vector<EdgeId>& edges) {
  int s = 0;
  for (EdgeId e : edges) s += x.halves(e);
  return s;
}

// The other fractional edge at a saturated degree-2-in-halves copy vertex.
EdgeId other_half_edge(const CapGraph& gh, const HalfVector& x, VertexId at,
                       EdgeId not_this) {
  for (EdgeId e : gh.incident(at))
    if (e != not_this && x.halves(e) == 1) return e;
  throw InvalidInstance("translation: copy vertex " + gh.vertex_name(at) +
                        " lacks a second half-edge; input is not basic");
}

}  // namespace

HalfVector translate_from_unit(const UnitReduction& r, const HalfVector& xhat) {
  const CapGraph& g = r.original;
  const CapGraph& gh = r.graph;
  if (xhat.size() != static_cast<std::size_t>(gh.edge_count()))
    throw InvalidInstance("translation: vector does not match reduced graph");
  HalfVector work = xhat;

  // Rewrite pass. Two rules, applied until none fires:
  //  - a port carrying two half side edges with an idle middle passes a
  //    fractional cycle through two copies; reroute the cycle through one
  //    copy and match the other to the port outright (shortens the cycle
  //    by two, weight unchanged);
  //  - a full side edge whose far port is empty swaps onto the middle edge
  //    (weight unchanged, frees a copy).
  // Each firing removes two half-edges or retires a gadget, so the loop
  // terminates.
  bool changed = true;
  long long guard = 4 * (gh.edge_count() + 1);
  while (changed) {
    if (--guard < 0)
      throw InvalidInstance("translation: rewrite pass failed to settle");
    changed = false;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      for (int side = 0; side < 2; ++side) {
        const std::vector<EdgeId>& sides = side ? r.side_v[e] : r.side_u[e];
        VertexId port = side ? r.port_v[e] : r.port_u[e];
        if (work.halves(r.middle[e]) != 0) continue;

        std::vector<EdgeId> halfs;
        for (EdgeId s : sides)
          if (work.halves(s) == 1) halfs.push_back(s);
        if (halfs.size() == 2) {
          VertexId keep = gh.other_end(halfs[0], port);
          VertexId move = gh.other_end(halfs[1], port);
          EdgeId moved = other_half_edge(gh, work, keep, halfs[0]);
          VertexId far = gh.other_end(moved, keep);
          auto landing = gh.find_edge(far, move);
          if (!landing || work.halves(*landing) != 0)
            throw InvalidInstance(
                "translation: cannot reroute cycle at port " +
                gh.vertex_name(port) + "; input is not basic");
          work.set_halves(halfs[0], 2);
          work.set_halves(halfs[1], 0);
          work.set_halves(moved, 0);
          work.set_halves(*landing, 1);
          changed = true;
          continue;
        }

        // Full side edge facing an empty far port swaps onto the middle.
        const std::vector<EdgeId>& far_sides = side ? r.side_u[e] : r.side_v[e];
        if (sum_halves(work, far_sides) != 0) continue;
        for (EdgeId s : sides) {
          if (work.halves(s) == 2) {
            work.set_halves(s, 0);
            work.set_halves(r.middle[e], 2);
            changed = true;
            break;
          }
        }
      }
    }
  }

  // Classification pass.
  HalfVector x(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    int m = work.halves(r.middle[e]);
    int su = sum_halves(work, r.side_u[e]);
    int sv = sum_halves(work, r.side_v[e]);
    if (m == 2 && su == 0 && sv == 0) {
      x.set_halves(e, 0);
    } else if (m == 0 && su == 2 && sv == 2) {
      x.set_halves(e, 2);
    } else if (m == 1 && su == 1 && sv == 1) {
      x.set_halves(e, 1);
    } else if (m == 0 && su == 0 && sv == 0 && g.edge(e).weight == 0) {
      x.set_halves(e, 0);
    } else {
      throw InvalidInstance("translation: gadget of edge " + g.edge_label(e) +
                            " fits no pattern; input is not basic optimal");
    }
  }

  std::string why;
  if (!is_feasible(g, x, &why))
    throw InvalidInstance("translation produced an infeasible vector: " + why);
  if (x.weight(g) != xhat.weight(gh) - r.weight_offset)
    throw InvalidInstance("translation changed the adjusted weight");
  return x;
}

HalfVector translate_to_unit(const UnitReduction& r, const HalfVector& x) {
  const CapGraph& g = r.original;
  std::string why;
  if (!is_basic(g, x, &why))
    throw InvalidInstance("translation to unit needs a basic vector: " + why);
  SupportDecomposition dec = decompose_support(g, x);

  // Deterministic copy assignment: each cycle visit pins one copy for both
  // incident cycle edges, then each matched edge takes the next free copy
  // at both ends.
  std::vector<std::size_t> cursor(g.vertex_count(), 0);
  auto take_copy = [&](VertexId v) {
    if (cursor[v] >= r.copies[v].size())
      throw InvalidInstance("translation to unit ran out of copies at " +
                            g.vertex_name(v));
    return r.copies[v][cursor[v]++];
  };

  HalfVector xhat(r.graph.edge_count());
  auto side_at = [&](const std::vector<EdgeId>& sides, VertexId port,
                     VertexId copy) {
    for (EdgeId s : sides)
      if (r.graph.other_end(s, port) == copy) return s;
    throw InvalidInstance("translation to unit: missing side edge");
  };

  for (const std::vector<EdgeId>& cycle : dec.cycles) {
    std::vector<VertexId> verts =
        SupportDecomposition::cycle_vertices(g, cycle);
    for (std::size_t j = 0; j < cycle.size(); ++j) {
      VertexId copy = take_copy(verts[j]);
      // Edges j-1 and j both pass through verts[j]; each gets a half on
      // its side edge at this copy.
      for (EdgeId e : {cycle[(j + cycle.size() - 1) % cycle.size()], cycle[j]}) {
        bool at_u = g.edge(e).u == verts[j];
        xhat.set_halves(side_at(at_u ? r.side_u[e] : r.side_v[e],
                                at_u ? r.port_u[e] : r.port_v[e], copy),
                        1);
      }
    }
    for (EdgeId e : cycle) xhat.set_halves(r.middle[e], 1);
  }
  for (EdgeId e : dec.matched) {
    VertexId cu = take_copy(g.edge(e).u);
    VertexId cv = take_copy(g.edge(e).v);
    xhat.set_halves(side_at(r.side_u[e], r.port_u[e], cu), 2);
    xhat.set_halves(side_at(r.side_v[e], r.port_v[e], cv), 2);
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (x.halves(e) == 0) xhat.set_halves(r.middle[e], 2);
  }

  if (!is_feasible(r.graph, xhat, &why))
    throw InvalidInstance("translation to unit produced infeasible: " + why);
  if (xhat.weight(r.graph) != x.weight(g) + r.weight_offset)
    throw InvalidInstance("translation to unit changed the adjusted weight");
  return xhat;
}

}  // namespace capstab
