#include "circuits.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace capstab {

std::string to_string(CircuitClass cls) {
  switch (cls) {
    case CircuitClass::kC1: return "C1";
    case CircuitClass::kC2: return "C2";
    case CircuitClass::kC3: return "C3";
    case CircuitClass::kC4: return "C4";
    case CircuitClass::kC5: return "C5";
  }
  return "?";
}

namespace {

std::nullopt_t rejected(std::string* why, const std::string& message) {
  if (why) *why = message;
  return std::nullopt;
}

// Incidence restricted to an edge subset; lists stay sorted by edge id
// because they are filled in ascending order.
std::vector<std::vector<EdgeId>> restricted_incidence(
    const CapGraph& g, const std::vector<EdgeId>& edges) {
  std::vector<std::vector<EdgeId>> inc(g.vertex_count());
  for (EdgeId e : edges) {
    inc[g.edge(e).u].push_back(e);
    inc[g.edge(e).v].push_back(e);
  }
  return inc;
}

// Follows unused edges from start, always taking the smallest unused edge at
// the current vertex, until the walk closes back at start (cycle) or runs
// out of edges (path ending at the far endpoint).
std::vector<EdgeId> greedy_walk(const CapGraph& g,
                                const std::vector<std::vector<EdgeId>>& inc,
                                std::vector<char>& used, VertexId start) {
  std::vector<EdgeId> order;
  VertexId cur = start;
  for (;;) {
    EdgeId next = -1;
    for (EdgeId e : inc[cur]) {
      if (!used[e]) {
        next = e;
        break;
      }
    }
    if (next < 0) break;
    used[next] = 1;
    order.push_back(next);
    cur = g.other_end(next, cur);
    if (cur == start) break;
  }
  return order;
}

std::vector<VertexId> component_vertices(
    const CapGraph& g, const std::vector<std::vector<EdgeId>>& inc,
    VertexId seed) {
  std::vector<VertexId> stack{seed}, out;
  std::vector<char> seen(g.vertex_count(), 0);
  seen[seed] = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (EdgeId e : inc[v]) {
      VertexId u = g.other_end(e, v);
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool vertex_disjoint(const std::vector<VertexId>& a,
                     const std::vector<VertexId>& b) {
  std::vector<VertexId> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(both));
  return both.empty();
}

}  // namespace

std::optional<Circuit> classify_circuit(const CapGraph& g,
                                        std::vector<int> coeffs,
                                        std::string* why) {
  if (static_cast<int>(coeffs.size()) != g.edge_count()) {
    throw InvalidInstance("coefficient vector does not match the edge count");
  }
  int common = 0;
  for (int c : coeffs) common = std::gcd(common, std::abs(c));
  if (common == 0) return rejected(why, "zero vector");
  bool rescaled = common > 1;
  if (rescaled) {
    for (int& c : coeffs) c /= common;
  }

  std::vector<EdgeId> support, ones, twos;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (coeffs[e] == 0) continue;
    int mag = std::abs(coeffs[e]);
    if (mag > 2) {
      return rejected(why, "coefficient magnitude above 2 on edge " +
                               g.edge_label(e));
    }
    support.push_back(e);
    (mag == 1 ? ones : twos).push_back(e);
  }

  std::vector<int> deg(g.vertex_count(), 0), bal(g.vertex_count(), 0);
  for (EdgeId e : support) {
    const Edge& ed = g.edge(e);
    ++deg[ed.u];
    ++deg[ed.v];
    bal[ed.u] += coeffs[e];
    bal[ed.v] += coeffs[e];
  }

  std::vector<std::vector<EdgeId>> support_inc = restricted_incidence(g, support);
  std::vector<VertexId> f_vertices =
      component_vertices(g, support_inc, g.edge(support.front()).u);
  for (EdgeId e : support) {
    if (!std::binary_search(f_vertices.begin(), f_vertices.end(),
                            g.edge(e).u)) {
      return rejected(why, "support is not connected");
    }
  }

  Circuit out;
  out.coeffs = coeffs;
  out.rescaled = rescaled;

  if (twos.empty()) {
    int ends = 0, fours = 0;
    VertexId four = -1;
    std::vector<VertexId> endpoints;
    for (VertexId v : f_vertices) {
      if (deg[v] == 1) {
        ++ends;
        endpoints.push_back(v);
      } else if (deg[v] == 4) {
        ++fours;
        four = v;
      } else if (deg[v] != 2) {
        return rejected(why, "vertex " + g.vertex_name(v) +
                                 " has unsupported support degree " +
                                 std::to_string(deg[v]));
      }
    }
    if (fours > 1) {
      return rejected(why, "more than one degree-4 vertex");
    }

    if (fours == 1) {
      // Two cycles sharing one vertex.
      if (ends > 0) {
        return rejected(why, "mix of cycle junction and loose endpoints");
      }
      std::vector<char> used(g.edge_count(), 0);
      std::vector<EdgeId> c1 = greedy_walk(g, support_inc, used, four);
      std::vector<EdgeId> c2 = greedy_walk(g, support_inc, used, four);
      if (c1.size() + c2.size() != support.size()) {
        return rejected(why, "support does not split into two cycles");
      }
      if (c1.size() % 2 == 0 || c2.size() % 2 == 0) {
        return rejected(why, "both cycles through " + g.vertex_name(four) +
                                 " must have odd length");
      }
      for (VertexId v : f_vertices) {
        if (bal[v] != 0) {
          return rejected(why, "vertex " + g.vertex_name(v) + " is unbalanced");
        }
      }
      if (c2.front() < c1.front()) std::swap(c1, c2);
      out.cls = CircuitClass::kC5;
      out.cycle = std::move(c1);
      out.cycle2 = std::move(c2);
      return out;
    }

    if (ends == 0) {
      // One cycle.
      std::vector<char> used(g.edge_count(), 0);
      std::vector<EdgeId> cyc = greedy_walk(g, support_inc, used, f_vertices.front());
      if (cyc.size() % 2 == 0) {
        for (VertexId v : f_vertices) {
          if (bal[v] != 0) {
            return rejected(why, "even cycle is unbalanced at vertex " +
                                     g.vertex_name(v));
          }
        }
        out.cls = CircuitClass::kC1;
        out.cycle = std::move(cyc);
        return out;
      }
      std::vector<VertexId> unbalanced;
      for (VertexId v : f_vertices) {
        if (bal[v] != 0) unbalanced.push_back(v);
      }
      if (unbalanced.size() != 1) {
        return rejected(why, "odd cycle needs exactly one unbalanced vertex, found " +
                                 std::to_string(unbalanced.size()));
      }
      out.cls = CircuitClass::kC2;
      out.cycle = std::move(cyc);
      out.special = unbalanced.front();
      return out;
    }

    if (ends != 2) {
      return rejected(why, "a path needs exactly two endpoints, found " +
                               std::to_string(ends));
    }
    std::vector<char> used(g.edge_count(), 0);
    std::vector<EdgeId> path =
        greedy_walk(g, support_inc, used, std::min(endpoints[0], endpoints[1]));
    for (VertexId v : f_vertices) {
      if (deg[v] == 2 && bal[v] != 0) {
        return rejected(why, "path interior is unbalanced at vertex " +
                                 g.vertex_name(v));
      }
    }
    out.cls = CircuitClass::kC3;
    out.path = std::move(path);
    return out;
  }

  // Double-weight entries form the connecting path; single-weight entries
  // must form one pendant cycle (kC4) or two joined cycles (kC5).
  std::vector<std::vector<EdgeId>> twos_inc = restricted_incidence(g, twos);
  std::vector<VertexId> path_ends;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    int d = static_cast<int>(twos_inc[v].size());
    if (d == 1) path_ends.push_back(v);
    if (d > 2) {
      return rejected(why, "double-weight edges branch at vertex " +
                               g.vertex_name(v));
    }
  }
  if (path_ends.size() != 2) {
    return rejected(why, "double-weight edges must form an open path");
  }
  std::vector<char> used(g.edge_count(), 0);
  std::vector<EdgeId> path = greedy_walk(g, twos_inc, used, path_ends[0]);
  if (path.size() != twos.size()) {
    return rejected(why, "double-weight edges are not a single path");
  }

  if (ones.empty()) {
    return rejected(why, "a path of double-weight edges needs cycles to balance");
  }
  std::vector<std::vector<EdgeId>> ones_inc = restricted_incidence(g, ones);
  for (EdgeId e : ones) {
    for (VertexId v : {g.edge(e).u, g.edge(e).v}) {
      if (ones_inc[v].size() != 2) {
        return rejected(why, "single-weight edges must form cycles; vertex " +
                                 g.vertex_name(v) + " has degree " +
                                 std::to_string(ones_inc[v].size()));
      }
    }
  }
  std::vector<std::vector<EdgeId>> cycles;
  std::vector<std::vector<VertexId>> cycle_verts;
  {
    std::vector<char> cyc_used(g.edge_count(), 0);
    for (EdgeId e : ones) {
      if (cyc_used[e]) continue;
      std::vector<VertexId> comp = component_vertices(g, ones_inc, g.edge(e).u);
      std::vector<EdgeId> cyc = greedy_walk(g, ones_inc, cyc_used, comp.front());
      if (cyc.size() % 2 == 0) {
        return rejected(why, "cycle attached to a path must have odd length");
      }
      cycles.push_back(std::move(cyc));
      cycle_verts.push_back(std::move(comp));
    }
  }

  std::vector<VertexId> path_verts{path_ends[0]};
  {
    VertexId cur = path_ends[0];
    for (EdgeId e : path) {
      cur = g.other_end(e, cur);
      path_verts.push_back(cur);
    }
  }
  auto on_cycle = [&](int ci, VertexId v) {
    return std::binary_search(cycle_verts[ci].begin(), cycle_verts[ci].end(), v);
  };

  if (cycles.size() == 1) {
    bool front_on = on_cycle(0, path_verts.front());
    bool back_on = on_cycle(0, path_verts.back());
    if (front_on == back_on) {
      return rejected(why, front_on ? "path may touch the cycle at only one endpoint"
                                    : "path must start on the cycle");
    }
    if (back_on) {
      std::reverse(path.begin(), path.end());
      std::reverse(path_verts.begin(), path_verts.end());
    }
    for (std::size_t i = 1; i + 1 < path_verts.size(); ++i) {
      if (on_cycle(0, path_verts[i])) {
        return rejected(why, "path revisits the cycle at vertex " +
                                 g.vertex_name(path_verts[i]));
      }
    }
    for (VertexId v : f_vertices) {
      if (deg[v] >= 2 && bal[v] != 0) {
        return rejected(why, "vertex " + g.vertex_name(v) + " is unbalanced");
      }
    }
    out.cls = CircuitClass::kC4;
    out.cycle = std::move(cycles[0]);
    out.path = std::move(path);
    out.special = path_verts.back();
    return out;
  }

  if (cycles.size() != 2) {
    return rejected(why, "expected one or two cycles, found " +
                             std::to_string(cycles.size()));
  }
  if (!vertex_disjoint(cycle_verts[0], cycle_verts[1])) {
    return rejected(why, "cycles joined by a path must be vertex-disjoint");
  }
  bool front_on_first = on_cycle(0, path_verts.front());
  bool ends_ok = (front_on_first && on_cycle(1, path_verts.back())) ||
                 (on_cycle(1, path_verts.front()) && on_cycle(0, path_verts.back()));
  if (!ends_ok) {
    return rejected(why, "path must run from one cycle to the other");
  }
  if (!front_on_first) {
    std::reverse(path.begin(), path.end());
    std::reverse(path_verts.begin(), path_verts.end());
  }
  for (std::size_t i = 1; i + 1 < path_verts.size(); ++i) {
    if (on_cycle(0, path_verts[i]) || on_cycle(1, path_verts[i])) {
      return rejected(why, "path revisits a cycle at vertex " +
                               g.vertex_name(path_verts[i]));
    }
  }
  for (VertexId v : f_vertices) {
    if (bal[v] != 0) {
      return rejected(why, "vertex " + g.vertex_name(v) + " is unbalanced");
    }
  }
  out.cls = CircuitClass::kC5;
  out.cycle = std::move(cycles[0]);
  out.cycle2 = std::move(cycles[1]);
  out.path = std::move(path);
  return out;
}

CircuitApplication apply_circuit(const CapGraph& g, const HalfVector& x,
                                 const Circuit& circuit, const Rational& alpha) {
  if (alpha != Rational(1) && alpha != Rational(1, 2)) {
    throw InvalidInstance("step size must be 1/2 or 1");
  }
  int unit = (alpha == Rational(1)) ? 2 : 1;
  HalfVector moved = x;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    int h = static_cast<int>(x.halves(e)) + unit * circuit.coeffs[e];
    if (h < 0 || h > 2) {
      return {std::nullopt, "edge " + g.edge_label(e) + " leaves [0, 1]"};
    }
    moved.set_halves(e, static_cast<std::uint8_t>(h));
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (moved.degree_halves(g, v) > 2 * g.capacity(v)) {
      return {std::nullopt,
              "vertex " + g.vertex_name(v) + " exceeds its capacity"};
    }
  }
  return {std::move(moved), ""};
}

std::optional<AdjacencyStep> vertex_difference(const CapGraph& g,
                                               const HalfVector& x,
                                               const HalfVector& y,
                                               std::string* why) {
  if (x == y) return rejected(why, "points are identical");
  std::vector<int> diff(g.edge_count());
  bool any_odd = false;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    diff[e] = static_cast<int>(y.halves(e)) - static_cast<int>(x.halves(e));
    any_odd = any_odd || (diff[e] % 2 != 0);
  }

  AdjacencyStep step;
  if (any_odd) {
    step.alpha = Rational(1, 2);
  } else {
    step.alpha = 1;
    for (int& d : diff) d /= 2;
  }

  std::string reason;
  std::optional<Circuit> circuit = classify_circuit(g, diff, &reason);
  if (!circuit) {
    return rejected(why, "difference is not a circuit: " + reason);
  }

  bool half = step.alpha == Rational(1, 2);
  switch (circuit->cls) {
    case CircuitClass::kC1:
      step.allowed_cycle_deltas = {0};
      break;
    case CircuitClass::kC2:
      step.allowed_cycle_deltas = half ? std::vector<int>{-1, 1}
                                       : std::vector<int>{0};
      break;
    case CircuitClass::kC3:
      if (half) {
        return rejected(why, "a half step along a path strands a lone half-edge");
      }
      step.allowed_cycle_deltas = {0};
      break;
    case CircuitClass::kC4:
      if (!half) return rejected(why, "full steps cannot move double entries");
      step.allowed_cycle_deltas = {-1, 1};
      break;
    case CircuitClass::kC5:
      if (!half) return rejected(why, "full steps cannot move double entries");
      step.allowed_cycle_deltas = {-2, 0, 2};
      break;
  }
  step.circuit = std::move(*circuit);
  return step;
}

namespace {

void canonical_sign(std::vector<int>& coeffs) {
  for (int c : coeffs) {
    if (c > 0) return;
    if (c < 0) {
      for (int& d : coeffs) d = -d;
      return;
    }
  }
}

struct WitnessEnum {
  const CapGraph& g;
  std::map<std::vector<int>, Circuit> found;

  void offer(std::vector<int> coeffs) {
    canonical_sign(coeffs);
    if (found.count(coeffs)) return;
    std::string reason;
    std::optional<Circuit> circuit = classify_circuit(g, coeffs, &reason);
    if (!circuit) {
      throw std::logic_error("constructed pattern rejected: " + reason);
    }
    found.emplace(std::move(coeffs), std::move(*circuit));
  }

  // Alternating +-1 along the rotated cycle so that both edges at the
  // rotation vertex share a sign (odd length) or alternate fully (even).
  void cycle_pattern(std::vector<int>& coeffs, const std::vector<EdgeId>& cyc,
                     std::size_t from, int sign) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      coeffs[cyc[(from + i) % cyc.size()]] = (i % 2 == 0) ? sign : -sign;
    }
  }

  void offer_cycle(const std::vector<EdgeId>& cyc) {
    std::vector<int> coeffs(g.edge_count(), 0);
    if (cyc.size() % 2 == 0) {
      cycle_pattern(coeffs, cyc, 0, 1);
      offer(std::move(coeffs));
      return;
    }
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      std::fill(coeffs.begin(), coeffs.end(), 0);
      cycle_pattern(coeffs, cyc, j, 1);
      offer(coeffs);
    }
  }

  void offer_path(const std::vector<EdgeId>& path) {
    std::vector<int> coeffs(g.edge_count(), 0);
    for (std::size_t i = 0; i < path.size(); ++i) {
      coeffs[path[i]] = (i % 2 == 0) ? 1 : -1;
    }
    offer(std::move(coeffs));
  }

  void offer_pendant(const std::vector<EdgeId>& cyc, std::size_t junction,
                     const std::vector<EdgeId>& path) {
    std::vector<int> coeffs(g.edge_count(), 0);
    cycle_pattern(coeffs, cyc, junction, 1);
    for (std::size_t i = 0; i < path.size(); ++i) {
      coeffs[path[i]] = (i % 2 == 0) ? -2 : 2;
    }
    offer(std::move(coeffs));
  }

  void offer_pair(const std::vector<EdgeId>& c1, std::size_t from1,
                  const std::vector<EdgeId>& c2, std::size_t from2,
                  const std::vector<EdgeId>& path) {
    std::vector<int> coeffs(g.edge_count(), 0);
    cycle_pattern(coeffs, c1, from1, 1);
    for (std::size_t i = 0; i < path.size(); ++i) {
      coeffs[path[i]] = (i % 2 == 0) ? -2 : 2;
    }
    int tail = path.empty() ? 2 : coeffs[path.back()];
    cycle_pattern(coeffs, c2, from2, tail > 0 ? -1 : 1);
    offer(std::move(coeffs));
  }
};

// Simple cycles as edge sequences; each appears once, starting at its
// smallest vertex with the smaller second vertex first.
struct CycleEnum {
  const CapGraph& g;
  std::vector<char> on_path;
  std::vector<VertexId> verts;
  std::vector<EdgeId> edges;
  std::vector<std::vector<EdgeId>> out;

  void run() {
    on_path.assign(g.vertex_count(), 0);
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
      verts = {s};
      on_path[s] = 1;
      dfs(s, s);
      on_path[s] = 0;
    }
  }

  void dfs(VertexId s, VertexId cur) {
    for (EdgeId e : g.incident(cur)) {
      VertexId nxt = g.other_end(e, cur);
      if (nxt == s && edges.size() >= 2 && verts[1] < cur) {
        edges.push_back(e);
        out.push_back(edges);
        edges.pop_back();
      } else if (nxt > s && !on_path[nxt]) {
        on_path[nxt] = 1;
        verts.push_back(nxt);
        edges.push_back(e);
        dfs(s, nxt);
        edges.pop_back();
        verts.pop_back();
        on_path[nxt] = 0;
      }
    }
  }
};

}  // namespace

std::vector<Circuit> enumerate_circuits(const CapGraph& g) {
  if (g.edge_count() > 9) {
    throw ScaleError("circuit enumeration is limited to 9 edges");
  }
  WitnessEnum wit{g, {}};

  CycleEnum cycle_enum{g, {}, {}, {}, {}};
  cycle_enum.run();
  const std::vector<std::vector<EdgeId>>& cycles = cycle_enum.out;

  std::vector<std::vector<VertexId>> cycle_verts;
  cycle_verts.reserve(cycles.size());
  for (const std::vector<EdgeId>& cyc : cycles) {
    std::vector<VertexId> vs = SupportDecomposition::cycle_vertices(g, cyc);
    cycle_verts.push_back(vs);
    wit.offer_cycle(cyc);
  }

  // Paths, enumerated from the smaller endpoint.
  {
    std::vector<char> on_path(g.vertex_count(), 0);
    std::vector<EdgeId> edges;
    auto dfs = [&](auto&& self, VertexId s, VertexId cur) -> void {
      if (!edges.empty() && s < cur) wit.offer_path(edges);
      for (EdgeId e : g.incident(cur)) {
        VertexId nxt = g.other_end(e, cur);
        if (on_path[nxt]) continue;
        on_path[nxt] = 1;
        edges.push_back(e);
        self(self, s, nxt);
        edges.pop_back();
        on_path[nxt] = 0;
      }
    };
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
      on_path[s] = 1;
      dfs(dfs, s, s);
      on_path[s] = 0;
    }
  }

  // Odd cycle plus pendant path: walk away from each cycle vertex without
  // touching the cycle again.
  for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
    if (cycles[ci].size() % 2 == 0) continue;
    std::vector<char> blocked(g.vertex_count(), 0);
    for (VertexId v : cycle_verts[ci]) blocked[v] = 1;
    for (std::size_t j = 0; j < cycles[ci].size(); ++j) {
      VertexId junction = cycle_verts[ci][j];
      std::vector<EdgeId> edges;
      auto dfs = [&](auto&& self, VertexId cur) -> void {
        for (EdgeId e : g.incident(cur)) {
          VertexId nxt = g.other_end(e, cur);
          if (blocked[nxt]) continue;
          blocked[nxt] = 1;
          edges.push_back(e);
          wit.offer_pendant(cycles[ci], j, edges);
          self(self, nxt);
          edges.pop_back();
          blocked[nxt] = 0;
        }
      };
      dfs(dfs, junction);
    }
  }

  // Two odd cycles, sharing a vertex or joined by a path.
  for (std::size_t a = 0; a < cycles.size(); ++a) {
    if (cycles[a].size() % 2 == 0) continue;
    for (std::size_t b = a + 1; b < cycles.size(); ++b) {
      if (cycles[b].size() % 2 == 0) continue;
      std::vector<VertexId> shared;
      std::set_intersection(cycle_verts[a].begin(), cycle_verts[a].end(),
                            cycle_verts[b].begin(), cycle_verts[b].end(),
                            std::back_inserter(shared));
      if (shared.size() == 1) {
        std::size_t ja = std::find(cycle_verts[a].begin(), cycle_verts[a].end(),
                                   shared[0]) -
                         cycle_verts[a].begin();
        std::size_t jb = std::find(cycle_verts[b].begin(), cycle_verts[b].end(),
                                   shared[0]) -
                         cycle_verts[b].begin();
        wit.offer_pair(cycles[a], ja, cycles[b], jb, {});
        continue;
      }
      if (!shared.empty()) continue;

      std::vector<char> blocked(g.vertex_count(), 0);
      for (VertexId v : cycle_verts[a]) blocked[v] = 1;
      for (VertexId v : cycle_verts[b]) blocked[v] = 1;
      for (std::size_t ja = 0; ja < cycles[a].size(); ++ja) {
        VertexId start = cycle_verts[a][ja];
        std::vector<EdgeId> edges;
        auto dfs = [&](auto&& self, VertexId cur) -> void {
          for (EdgeId e : g.incident(cur)) {
            VertexId nxt = g.other_end(e, cur);
            auto hit = std::find(cycle_verts[b].begin(), cycle_verts[b].end(), nxt);
            if (hit != cycle_verts[b].end()) {
              edges.push_back(e);
              wit.offer_pair(cycles[a], ja, cycles[b],
                             static_cast<std::size_t>(hit - cycle_verts[b].begin()),
                             edges);
              edges.pop_back();
              continue;
            }
            if (blocked[nxt]) continue;
            blocked[nxt] = 1;
            edges.push_back(e);
            self(self, nxt);
            edges.pop_back();
            blocked[nxt] = 0;
          }
        };
        dfs(dfs, start);
      }
    }
  }

  std::vector<Circuit> out;
  out.reserve(wit.found.size());
  for (auto& entry : wit.found) out.push_back(std::move(entry.second));
  return out;
}

}  // namespace capstab
