#include "graph.hpp"

#include <algorithm>
#include <unordered_map>

namespace capstab {

CapGraph CapGraph::build(std::vector<std::string> names,
                         std::vector<long long> capacities,
                         std::vector<std::tuple<int, int, Rational>> edges) {
  if (names.size() != capacities.size())
    throw InvalidInstance("vertex name/capacity count mismatch");
  CapGraph g;
  g.names_ = std::move(names);
  g.caps_ = std::move(capacities);
  const int n = g.vertex_count();
  {
    std::unordered_map<std::string, int> seen;
    for (int v = 0; v < n; ++v) {
      if (g.names_[v].empty()) throw InvalidInstance("empty vertex name");
      if (!seen.emplace(g.names_[v], v).second)
        throw InvalidInstance("duplicate vertex name: " + g.names_[v]);
      if (g.caps_[v] < 0)
        throw InvalidInstance("negative capacity at vertex " + g.names_[v]);
    }
  }
  g.inc_.assign(n, {});
  for (auto& [a, b, w] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw InvalidInstance("edge endpoint out of range");
    if (a == b)
      throw InvalidInstance("self-loop at vertex " + g.names_[a]);
    if (w < 0)
      throw InvalidInstance("negative weight on edge " + g.names_[a] + " " +
                            g.names_[b]);
    if (g.find_edge(a, b))
      throw InvalidInstance("duplicate edge " + g.names_[a] + " " +
                            g.names_[b]);
    EdgeId id = g.edge_count();
    g.edges_.push_back(Edge{a, b, std::move(w)});
    g.inc_[a].push_back(id);
    g.inc_[b].push_back(id);
  }
  return g;
}

std::optional<VertexId> CapGraph::find_vertex(std::string_view name) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (names_[v] == name) return v;
  return std::nullopt;
}

int CapGraph::max_degree() const {
  int d = 0;
  for (auto& adj : inc_) d = std::max(d, static_cast<int>(adj.size()));
  return d;
}

std::optional<EdgeId> CapGraph::find_edge(VertexId a, VertexId b) const {
  if (a < 0 || a >= vertex_count() || b < 0 || b >= vertex_count())
    return std::nullopt;
  for (EdgeId e : inc_[a]) {
    const Edge& ed = edges_[e];
    if ((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a)) return e;
  }
  return std::nullopt;
}

VertexId CapGraph::other_end(EdgeId e, VertexId v) const {
  const Edge& ed = edges_[e];
  if (ed.u == v) return ed.v;
  if (ed.v == v) return ed.u;
  throw InvalidInstance("vertex not on edge");
}

std::string CapGraph::edge_label(EdgeId e) const {
  return names_[edges_[e].u] + "-" + names_[edges_[e].v];
}

Rational CapGraph::total_weight() const {
  Rational s = 0;
  for (auto& e : edges_) s += e.weight;
  return s;
}

bool CapGraph::unit_weights() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return e.weight == 1; });
}

CapGraph CapGraph::reduce_capacities(
    const std::vector<VertexId>& multiset) const {
  CapGraph g = *this;
  for (VertexId v : multiset) {
    if (v < 0 || v >= vertex_count())
      throw InvalidInstance("stabilizer vertex out of range");
    if (--g.caps_[v] < 0)
      throw InvalidInstance("capacity of vertex " + names_[v] +
                            " would drop below zero");
  }
  return g;
}

CapGraph CapGraph::remove_edges(const std::vector<EdgeId>& drop) const {
  std::vector<char> gone(edge_count(), 0);
  for (EdgeId e : drop) {
    if (e < 0 || e >= edge_count())
      throw InvalidInstance("edge id out of range");
    gone[e] = 1;
  }
  std::vector<std::tuple<int, int, Rational>> kept;
  for (EdgeId e = 0; e < edge_count(); ++e)
    if (!gone[e]) kept.emplace_back(edges_[e].u, edges_[e].v, edges_[e].weight);
  return build(names_, caps_, std::move(kept));
}

std::vector<EdgeId> CMatching::edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < static_cast<int>(in.size()); ++e)
    if (in[e]) out.push_back(e);
  return out;
}

int CMatching::size() const {
  int k = 0;
  for (char c : in) k += (c != 0);
  return k;
}

int degree_in_matching(const CapGraph& g, const CMatching& m, VertexId v) {
  int d = 0;
  for (EdgeId e : g.incident(v)) d += m.contains(e);
  return d;
}

bool validate_c_matching(const CapGraph& g, const CMatching& m,
                         std::string* why) {
  if (static_cast<int>(m.in.size()) != g.edge_count()) {
    if (why) *why = "matching mask size mismatch";
    return false;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (degree_in_matching(g, m, v) > g.capacity(v)) {
      if (why) *why = "capacity exceeded at vertex " + g.vertex_name(v);
      return false;
    }
  }
  return true;
}

Rational matching_weight(const CapGraph& g, const CMatching& m) {
  Rational s = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (m.contains(e)) s += g.edge(e).weight;
  return s;
}

}  // namespace capstab
