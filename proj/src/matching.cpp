#include "matching.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "blossom.hpp"
#include "oracle.hpp"
#include "simplex.hpp"
#include "unit_reduction.hpp"

namespace capstab {

namespace {

// The blossom engine wants integer weights; scale by the least common
// denominator and keep the factor for reading values back.
struct ScaledUnitGraph {
  std::vector<UnitEdge> edges;
  BigInt denom = 1;
};

ScaledUnitGraph scale_unit_graph(const CapGraph& g) {
  ScaledUnitGraph out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    Rational w = g.edge(e).weight;
    out.denom = boost::multiprecision::lcm(out.denom, BigInt(denominator(w)));
  }
  // Dual arithmetic sums a few weights per blossom chain; 2^40 per weight
  // leaves ample headroom in 64 bits at the graph sizes this runs on.
  const BigInt limit = BigInt(1) << 40;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    Rational w = g.edge(e).weight;
    BigInt scaled = numerator(w) * (out.denom / denominator(w));
    if (abs(scaled) > limit)
      throw ScaleError("edge weights too large for the matching engine");
    out.edges.push_back(
        {g.edge(e).u, g.edge(e).v, scaled.convert_to<long long>()});
  }
  return out;
}

struct ReductionSolve {
  UnitReduction reduction;
  BlossomResult raw;
  Rational value;  // maximum c-matching weight on the original graph
};

ReductionSolve solve_by_reduction(const CapGraph& g) {
  ReductionSolve out{to_unit_capacity(g), {}, Rational(0)};
  ScaledUnitGraph scaled = scale_unit_graph(out.reduction.graph);
  out.raw =
      max_weight_matching(out.reduction.graph.vertex_count(), scaled.edges);
  out.value = Rational(BigInt(out.raw.value), scaled.denom) -
              out.reduction.weight_offset;
  return out;
}

// Reads the c-matching out of a maximum matching on the reduced graph: an
// original edge is used exactly when both of its gadget sides are matched.
// A gadget with one side or only the middle matched contributes the same
// weight as an unused edge, and an empty gadget cannot appear in a maximum
// matching (its middle edge would extend it), which pins the translated
// weight to the shifted optimum.
CMatching translate_integral(const ReductionSolve& rs) {
  const CapGraph& g = rs.reduction.original;
  CMatching m = CMatching::empty(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    bool mid = rs.raw.matched[rs.reduction.middle[e]] != 0;
    bool from_u = false;
    bool from_v = false;
    for (EdgeId f : rs.reduction.side_u[e]) from_u |= rs.raw.matched[f] != 0;
    for (EdgeId f : rs.reduction.side_v[e]) from_v |= rs.raw.matched[f] != 0;
    if (!mid && !from_u && !from_v)
      throw std::logic_error("reduced matching leaves a gadget empty");
    if (mid && (from_u || from_v))
      throw std::logic_error("reduced matching overfills a gadget");
    if (from_u && from_v) m.in[e] = 1;
  }
  std::string why;
  if (!validate_c_matching(g, m, &why))
    throw std::logic_error("translated matching invalid: " + why);
  if (matching_weight(g, m) != rs.value)
    throw std::logic_error("translated matching misses the optimum");
  return m;
}

// Bounded search for a feasible augmenting walk: for every start vertex and
// first-edge side, a dynamic program over (length, current vertex, side of
// the last edge) maximizes the walk gain, counting repeated edges once per
// pass. A state is a witness when its gain is positive and the endpoint
// slack conditions for its shape hold. Returns a shortest witness, ties
// broken by start vertex then first-edge side then end state.
// Walk gain contribution of one pass over edge e.
Rational step_gain(const CapGraph& g, const CMatching& m, EdgeId e) {
  Rational w = g.edge(e).weight;
  return m.contains(e) ? Rational(-w) : w;
}

std::optional<WalkRecord> search_walk(const CapGraph& g, const CMatching& m,
                                      int cap) {
  const int n = g.vertex_count();
  std::vector<int> mdeg(n);
  for (VertexId v = 0; v < n; ++v) mdeg[v] = degree_in_matching(g, m, v);

  struct Cell {
    bool reach = false;
    Rational gain;
    EdgeId from = -1;
  };
  struct Found {
    int len = 0;
    VertexId s = -1;
    int f1 = 0;
    WalkRecord walk;
  };
  std::optional<Found> best;

  for (VertexId s = 0; s < n; ++s) {
    for (int f1 = 0; f1 < 2; ++f1) {
      if (best && best->len == 1) break;
      // table[len][cur][lastM]
      std::vector<std::vector<std::array<Cell, 2>>> table(
          cap + 1, std::vector<std::array<Cell, 2>>(n));
      for (EdgeId e : g.incident(s)) {
        if ((m.contains(e) ? 1 : 0) != f1) continue;
        Rational gain = step_gain(g, m, e);
        Cell& c = table[1][g.other_end(e, s)][f1];
        if (!c.reach || gain > c.gain) c = {true, gain, e};
      }
      for (int len = 1; len <= cap; ++len) {
        if (best && best->len <= len) break;
        // harvest witnesses at this length
        std::optional<std::pair<VertexId, int>> hit;
        for (VertexId cur = 0; cur < n && !hit; ++cur) {
          for (int lastM = 0; lastM < 2 && !hit; ++lastM) {
            const Cell& c = table[len][cur][lastM];
            if (!c.reach || !(c.gain > 0)) continue;
            bool ok;
            if (cur != s) {
              ok = (f1 || mdeg[s] <= g.capacity(s) - 1) &&
                   (lastM || mdeg[cur] <= g.capacity(cur) - 1);
            } else if (len % 2 == 0) {
              ok = true;
            } else {
              ok = (f1 && lastM) || mdeg[s] <= g.capacity(s) - 1;
            }
            if (ok) hit = {cur, lastM};
          }
        }
        if (hit) {
          std::vector<EdgeId> steps(len);
          VertexId cur = hit->first;
          int lastM = hit->second;
          for (int i = len; i >= 1; --i) {
            EdgeId e = table[i][cur][lastM].from;
            steps[i - 1] = e;
            cur = g.other_end(e, cur);
            lastM ^= 1;
          }
          best = Found{len, s, f1, WalkRecord::trace(g, s, steps)};
          break;
        }
        if (len == cap) break;
        for (VertexId cur = 0; cur < n; ++cur) {
          for (int lastM = 0; lastM < 2; ++lastM) {
            const Cell& c = table[len][cur][lastM];
            if (!c.reach) continue;
            for (EdgeId e : g.incident(cur)) {
              if ((m.contains(e) ? 1 : 0) == lastM) continue;
              Rational gain = c.gain + step_gain(g, m, e);
              Cell& nxt = table[len + 1][g.other_end(e, cur)][lastM ^ 1];
              if (!nxt.reach || gain > nxt.gain) nxt = {true, gain, e};
            }
          }
        }
      }
    }
  }
  if (!best) return std::nullopt;
  return std::move(best->walk);
}

}  // namespace

MatchingResult max_weight_c_matching(const CapGraph& g,
                                     MatchingEngine engine) {
  if (engine == MatchingEngine::kBrute) {
    BruteMatchingResult b = brute_max_c_matching(g);
    return {std::move(b.matching), std::move(b.value), "brute"};
  }
  ReductionSolve rs = solve_by_reduction(g);
  const Rational target = rs.value;

  // Lexicographically smallest optimal edge set: scan edges in id order,
  // keep e when some maximum c-matching extends the kept edges without the
  // skipped ones, and stop once the kept set alone pays the optimum (a
  // shorter id sequence precedes all its extensions).
  CMatching kept = CMatching::empty(g);
  Rational kept_weight(0);
  std::vector<long long> room(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) room[v] = g.capacity(v);
  std::vector<EdgeId> dropped;
  for (EdgeId e = 0; e < g.edge_count() && kept_weight < target; ++e) {
    const Edge& ed = g.edge(e);
    if (room[ed.u] == 0 || room[ed.v] == 0) {
      dropped.push_back(e);
      continue;
    }
    std::vector<EdgeId> removed = dropped;
    std::vector<VertexId> loads;
    removed.push_back(e);
    loads.push_back(ed.u);
    loads.push_back(ed.v);
    for (EdgeId f = 0; f < e; ++f) {
      if (!kept.contains(f)) continue;
      removed.push_back(f);
      loads.push_back(g.edge(f).u);
      loads.push_back(g.edge(f).v);
    }
    CapGraph constrained = g.reduce_capacities(loads).remove_edges(removed);
    Rational with_e =
        kept_weight + ed.weight + solve_by_reduction(constrained).value;
    if (with_e == target) {
      kept.in[e] = 1;
      kept_weight += ed.weight;
      --room[ed.u];
      --room[ed.v];
    } else {
      dropped.push_back(e);
    }
  }
  if (kept_weight != target)
    throw std::logic_error("tie-break scan lost the optimum");
  return {std::move(kept), target, "reduction"};
}

std::optional<WalkRecord> find_proper_augmenting_trail(const CapGraph& g,
                                                       const CMatching& m) {
  std::string why;
  if (!validate_c_matching(g, m, &why))
    throw InvalidInstance("find_proper_augmenting_trail: " + why);
  ReductionSolve rs = solve_by_reduction(g);
  if (matching_weight(g, m) == rs.value) return std::nullopt;
  CMatching opt = translate_integral(rs);

  // Pair matched difference edges against unmatched ones around every
  // vertex. The pairing splits the symmetric difference into alternating
  // trails; interior visits keep vertex degrees, an unpaired non-matching
  // end only occurs with slack at that vertex, so every trail is proper,
  // and the gains sum to the total improvement, so some trail gains.
  std::vector<std::vector<std::pair<EdgeId, EdgeId>>> partner(
      g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<EdgeId> ins;
    std::vector<EdgeId> outs;
    for (EdgeId e : g.incident(v)) {
      if (m.contains(e) == opt.contains(e)) continue;
      (m.contains(e) ? ins : outs).push_back(e);
    }
    for (std::size_t i = 0; i < ins.size() && i < outs.size(); ++i) {
      partner[v].push_back({ins[i], outs[i]});
      partner[v].push_back({outs[i], ins[i]});
    }
  }
  auto next_through = [&](VertexId v, EdgeId e) -> EdgeId {
    for (const auto& pr : partner[v])
      if (pr.first == e) return pr.second;
    return -1;
  };

  std::vector<EdgeId> diff;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (m.contains(e) != opt.contains(e)) diff.push_back(e);

  std::vector<char> used(g.edge_count(), 0);
  std::optional<WalkRecord> pick;
  Rational pick_gain(0);
  auto consume = [&](VertexId v, EdgeId first) {
    std::vector<EdgeId> steps;
    Rational gain(0);
    VertexId cur = v;
    EdgeId e = first;
    while (e != -1 && !used[e]) {
      used[e] = 1;
      steps.push_back(e);
      gain += step_gain(g, m, e);
      cur = g.other_end(e, cur);
      e = next_through(cur, steps.back());
    }
    if (gain > pick_gain) {
      pick_gain = gain;
      pick = WalkRecord::trace(g, v, steps);
    }
  };
  // Open trails start at an unpaired edge end, closed ones keep whatever
  // starting edge is left.
  for (EdgeId e : diff) {
    if (used[e]) continue;
    VertexId lo = std::min(g.edge(e).u, g.edge(e).v);
    VertexId hi = std::max(g.edge(e).u, g.edge(e).v);
    if (next_through(lo, e) == -1)
      consume(lo, e);
    else if (next_through(hi, e) == -1)
      consume(hi, e);
  }
  for (EdgeId e : diff) {
    if (!used[e]) consume(std::min(g.edge(e).u, g.edge(e).v), e);
  }
  if (!pick)
    throw std::logic_error("improving difference produced no gaining trail");

  WalkFlags flags = classify_walk(g, m, *pick);
  if (!pick->is_trail() || !flags.alternating || !flags.augmenting ||
      !flags.proper)
    throw std::logic_error("difference trail failed validation");
  return pick;
}

std::optional<WalkRecord> find_feasible_augmenting_walk(const CapGraph& g,
                                                        const CMatching& m) {
  std::string why;
  if (!validate_c_matching(g, m, &why))
    throw InvalidInstance("find_feasible_augmenting_walk: " + why);
  Rational wm = matching_weight(g, m);
  Rational best = solve_by_reduction(g).value;
  if (wm != best)
    throw InvalidInstance(
        "find_feasible_augmenting_walk needs a maximum-weight matching");
  if (solve_fractional(g).primal_value == wm) return std::nullopt;

  for (int cap : {2 * g.edge_count() + 2, 4 * g.edge_count() + 4}) {
    std::optional<WalkRecord> w = search_walk(g, m, cap);
    if (!w) continue;
    WalkFlags flags = classify_walk(g, m, *w);
    if (!flags.alternating || !flags.augmenting || !flags.feasible)
      throw std::logic_error("walk search returned an invalid witness");
    return w;
  }
  throw std::logic_error("fractional gap without a bounded walk witness");
}

}  // namespace capstab
