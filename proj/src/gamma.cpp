#include "gamma.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "circuits.hpp"
#include "simplex.hpp"

namespace capstab {

namespace {

// One round of the cycle-reducing local search. Holds the fixed data of the
// round (current point, its support, dual tightness) and searches the three
// circuit shapes that can lower the fractional cycle count by a half step:
// an odd cycle opened at one vertex (C2), an odd cycle drained into a
// pendant alternating path (C4), and two odd cycles cancelled through a
// connecting alternating path (C5). Every candidate is validated from
// scratch: classified, weight-checked, applied under the polytope bounds,
// and accepted only if the result is basic with strictly fewer cycles.
struct MoveSearch {
  const CapGraph& g;
  const HalfVector& x;
  const SupportDecomposition& dec;
  const std::vector<char>& tight;  // per edge, under the fixed optimal dual

  std::vector<int> cycle_of;       // per vertex: index into dec.cycles or -1
  std::vector<std::vector<VertexId>> verts;  // per cycle, aligned with edges
  std::optional<HalfVector> found;

  MoveSearch(const CapGraph& graph, const HalfVector& point,
             const SupportDecomposition& support,
             const std::vector<char>& tight_edges)
      : g(graph), x(point), dec(support), tight(tight_edges) {
    cycle_of.assign(g.vertex_count(), -1);
    for (std::size_t i = 0; i < dec.cycles.size(); ++i) {
      verts.push_back(SupportDecomposition::cycle_vertices(g, dec.cycles[i]));
      for (VertexId v : verts.back()) cycle_of[v] = static_cast<int>(i);
    }
  }

  // Writes the +-1 pattern of cycle ci into coeffs so that both cycle edges
  // at position j carry -s; the odd length makes the alternation close up.
  void open_cycle(std::vector<int>& coeffs, int ci, int j, int s) const {
    const std::vector<EdgeId>& cyc = dec.cycles[ci];
    int len = static_cast<int>(cyc.size());
    for (int t = 0; t < len; ++t)
      coeffs[cyc[(j + t) % len]] = (t % 2 == 0) ? -s : s;
  }

  // Full validation of one candidate coefficient vector.
  bool try_move(std::vector<int> coeffs, int want_cycles) {
    auto circ = classify_circuit(g, std::move(coeffs));
    if (!circ) return false;
    if (circ->cls != CircuitClass::kC2 && circ->cls != CircuitClass::kC4 &&
        circ->cls != CircuitClass::kC5)
      return false;
    Rational delta(0);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (circ->coeffs[e] != 0)
        delta += Rational(circ->coeffs[e]) * g.edge(e).weight;
    if (delta != 0) return false;
    CircuitApplication app = apply_circuit(g, x, *circ, Rational(1, 2));
    if (!app.result) return false;
    if (!is_basic(g, *app.result)) return false;
    SupportDecomposition after = decompose_support(g, *app.result);
    if (static_cast<int>(after.cycles.size()) != want_cycles) return false;
    found = std::move(app.result);
    return true;
  }

  bool c2_move(int ci, int j) {
    std::vector<int> coeffs(g.edge_count(), 0);
    open_cycle(coeffs, ci, j, 1);
    return try_move(std::move(coeffs),
                    static_cast<int>(dec.cycles.size()) - 1);
  }

  // Depth-first growth of the alternating path leaving cycle ci at position
  // j. Path edges carry +-2 and alternate between raising an empty edge and
  // clearing a full one; s1 fixes which kind comes first. Ending at a plain
  // vertex yields a C4 candidate, ending on a different fractional cycle a
  // C5 candidate.
  bool path_moves(int ci, int j, int s1) {
    std::vector<char> visited(g.vertex_count(), 0);
    visited[verts[ci][j]] = 1;
    std::vector<int> coeffs(g.edge_count(), 0);
    open_cycle(coeffs, ci, j, s1);
    return grow_path(ci, verts[ci][j], s1, coeffs, visited, 0);
  }

  bool grow_path(int ci, VertexId cur, int s1, std::vector<int>& coeffs,
                 std::vector<char>& visited, int depth) {
    int sign = (depth % 2 == 0) ? s1 : -s1;
    std::uint8_t need = (sign > 0) ? 0 : 2;  // raise empty, clear full
    for (EdgeId e : g.incident(cur)) {
      if (coeffs[e] != 0 || x.halves(e) != need || !tight[e]) continue;
      VertexId nxt = g.other_end(e, cur);
      if (visited[nxt]) continue;
      if (cycle_of[nxt] == ci) continue;
      coeffs[e] = 2 * sign;
      if (cycle_of[nxt] >= 0) {
        // joins another fractional cycle: cancel both (C5)
        int cj = cycle_of[nxt];
        int j2 = 0;
        while (verts[cj][j2] != nxt) ++j2;
        std::vector<int> cand = coeffs;
        open_cycle(cand, cj, j2, sign);
        if (try_move(std::move(cand),
                     static_cast<int>(dec.cycles.size()) - 2))
          return true;
      } else {
        // plain endpoint: drain the cycle into the path (C4)
        if (try_move(coeffs, static_cast<int>(dec.cycles.size()) - 1))
          return true;
        visited[nxt] = 1;
        if (grow_path(ci, nxt, s1, coeffs, visited, depth + 1)) return true;
        visited[nxt] = 0;
      }
      coeffs[e] = 0;
    }
    return false;
  }

  std::optional<HalfVector> run() {
    for (int ci = 0; ci < static_cast<int>(dec.cycles.size()); ++ci) {
      int len = static_cast<int>(dec.cycles[ci].size());
      for (int j = 0; j < len; ++j)
        if (c2_move(ci, j)) return found;
      for (int j = 0; j < len; ++j)
        for (int s1 : {1, -1})
          if (path_moves(ci, j, s1)) return found;
    }
    return std::nullopt;
  }
};

// Local search from the optimizer's basic optimum; every accepted move
// keeps the weight and drops the cycle count, so it terminates.
std::pair<HalfVector, int> reduce_cycles(const CapGraph& g) {
  LpResult lp = solve_fractional(g);
  HalfVector x = lp.primal;
  std::vector<char> tight(g.edge_count(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    Rational covered =
        lp.dual.y[g.edge(e).u] + lp.dual.y[g.edge(e).v] + lp.dual.z[e];
    tight[e] = covered == g.edge(e).weight;
  }
  for (;;) {
    SupportDecomposition dec = decompose_support(g, x);
    if (dec.cycles.empty()) return {std::move(x), 0};
    MoveSearch search(g, x, dec, tight);
    std::optional<HalfVector> better = search.run();
    if (!better) return {std::move(x), static_cast<int>(dec.cycles.size())};
    x = std::move(*better);
  }
}

}  // namespace

MinCycleResult min_cycle_optimum(const CapGraph& g, GammaMode mode,
                                 int oracle_max_edges) {
  auto [x, count] = reduce_cycles(g);
  std::string why;
  if (!is_basic(g, x, &why))
    throw std::logic_error("cycle minimizer postcondition failed: " + why);
  if (count == 0 || mode == GammaMode::kHeuristic)
    return {std::move(x), count, count == 0};

  BasicOptima oracle = brute_basic_optima(g, oracle_max_edges);
  if (oracle.min_cycles > count || oracle.value != x.weight(g))
    throw std::logic_error(
        "cycle minimizer postcondition failed: enumeration disagrees");
  if (oracle.min_cycles == count) return {std::move(x), count, true};
  return {oracle.min_cycle_witness, oracle.min_cycles, true};
}

int gamma_exact(const CapGraph& g, int max_edges) {
  return brute_basic_optima(g, max_edges).min_cycles;
}

}  // namespace capstab
