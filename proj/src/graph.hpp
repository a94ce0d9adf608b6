#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace capstab {

using VertexId = int;
using EdgeId = int;

struct Edge {
  VertexId u;
  VertexId v;
  Rational weight;
};

class InvalidInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an exhaustive routine is asked to run above its size bound,
// or when exact arithmetic would overflow a fixed-width fast path.
class ScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simple undirected graph with per-vertex integer capacities and rational
// edge weights. Vertices and edges carry dense ids in construction order;
// external names are kept only for printing and lookups.
class CapGraph {
 public:
  CapGraph() = default;

  static CapGraph build(std::vector<std::string> names,
                        std::vector<long long> capacities,
                        std::vector<std::tuple<int, int, Rational>> edges);

  int vertex_count() const { return static_cast<int>(caps_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::string& vertex_name(VertexId v) const { return names_[v]; }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  long long capacity(VertexId v) const { return caps_[v]; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<EdgeId>& incident(VertexId v) const { return inc_[v]; }
  int degree(VertexId v) const { return static_cast<int>(inc_[v].size()); }
  int max_degree() const;
  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  VertexId other_end(EdgeId e, VertexId v) const;
  // "u-v" by vertex names, for messages.
  std::string edge_label(EdgeId e) const;

  Rational total_weight() const;
  bool unit_weights() const;

  // Returns a copy with capacity(v) lowered once per occurrence of v in the
  // multiset. Throws InvalidInstance if a capacity would go below zero.
  CapGraph reduce_capacities(const std::vector<VertexId>& multiset) const;

  // Copy without the listed edges. Edge ids are re-densified; use endpoints
  // to correlate with the original graph.
  CapGraph remove_edges(const std::vector<EdgeId>& drop) const;

 private:
  std::vector<std::string> names_;
  std::vector<long long> caps_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> inc_;
};

// Edge subset with multiplicity 0/1, the integral matchings of the model.
struct CMatching {
  std::vector<char> in;  // indexed by EdgeId

  static CMatching empty(const CapGraph& g) {
    return CMatching{std::vector<char>(g.edge_count(), 0)};
  }
  bool contains(EdgeId e) const { return in[e] != 0; }
  std::vector<EdgeId> edges() const;
  int size() const;
};

int degree_in_matching(const CapGraph& g, const CMatching& m, VertexId v);
bool validate_c_matching(const CapGraph& g, const CMatching& m,
                         std::string* why = nullptr);
Rational matching_weight(const CapGraph& g, const CMatching& m);

}  // namespace capstab
