#include "stabilize.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "matching.hpp"
#include "simplex.hpp"

namespace capstab {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::logic_error("stabilizer postcondition failed: " + what);
}

// Full arithmetic audit of a stability certificate: primal feasible,
// dual feasible, objectives equal, slackness clauses empty.
void revalidate(const CapGraph& g, const HalfVector& x, const DualCover& dual) {
  std::string why;
  if (!is_feasible(g, x, &why)) fail("primal infeasible: " + why);
  if (!is_dual_feasible(g, dual, &why)) fail("dual infeasible: " + why);
  if (x.weight(g) != dual.objective(g)) fail("objectives differ");
  std::vector<std::string> gaps = check_complementary_slackness(g, x, dual);
  if (!gaps.empty()) fail("slackness violated: " + gaps.front());
}

// Shared first phase of both stabilizers: a cycle-minimal basic optimum,
// the optimal dual, and one chosen vertex per fractional cycle (smallest
// dual value, lowest id on ties).
struct Plan {
  LpResult lp;
  MinCycleResult mc;
  SupportDecomposition dec;
  std::vector<int> exposed_pos;    // per cycle: index into its vertex list
  std::vector<VertexId> chosen;    // per cycle: the exposed vertex
};

Plan make_plan(const CapGraph& g, GammaMode mode, int oracle_max_edges) {
  Plan plan{solve_fractional(g), min_cycle_optimum(g, mode, oracle_max_edges),
            {}, {}, {}};
  plan.dec = decompose_support(g, plan.mc.x);
  for (const std::vector<EdgeId>& cyc : plan.dec.cycles) {
    std::vector<VertexId> verts =
        SupportDecomposition::cycle_vertices(g, cyc);
    int best = 0;
    for (int j = 1; j < static_cast<int>(verts.size()); ++j) {
      const Rational& yj = plan.lp.dual.y[verts[j]];
      const Rational& yb = plan.lp.dual.y[verts[best]];
      if (yj < yb || (yj == yb && verts[j] < verts[best])) best = j;
    }
    plan.exposed_pos.push_back(best);
    plan.chosen.push_back(verts[best]);
  }
  return plan;
}

// Rounds every fractional cycle to integral values so that the chosen
// vertex loses one unit of coverage and every other cycle vertex keeps its
// saturation: the two half edges at the chosen vertex drop to zero and the
// remaining cycle path alternates full, empty, full.
HalfVector round_exposing(const Plan& plan) {
  HalfVector xhat = plan.mc.x;
  for (std::size_t i = 0; i < plan.dec.cycles.size(); ++i) {
    const std::vector<EdgeId>& cyc = plan.dec.cycles[i];
    int len = static_cast<int>(cyc.size());
    int p = plan.exposed_pos[i];
    for (int t = 0; t < len; ++t) {
      std::uint8_t h = (t == 0 || t == len - 1) ? 0 : (t % 2 ? 2 : 0);
      xhat.set_halves(cyc[(p + t) % len], h);
    }
  }
  if (!xhat.is_integral()) fail("rounding left a fractional edge");
  return xhat;
}

int certified_edge_bound(const CapGraph& g, const MinCycleResult& mc) {
  if (!mc.certified) return 0;
  return g.unit_weights() ? mc.cycle_count : (mc.cycle_count + 1) / 2;
}

void check_weight_floor(const Rational& before, const Rational& after) {
  if (Rational(3) * after < Rational(2) * before)
    fail("stabilized weight fell below two thirds of the original");
}

}  // namespace

StabilityCheck is_stable(const CapGraph& g) {
  MatchingResult mr = max_weight_c_matching(g);
  LpResult lp = solve_fractional(g);
  StabilityCheck out;
  out.stable = mr.value == lp.primal_value;
  out.matching = mr.matching;
  out.matching_value = mr.value;
  out.fractional = lp.primal;
  out.fractional_value = lp.primal_value;
  out.dual = lp.dual;

  std::string why;
  if (!validate_c_matching(g, out.matching, &why))
    fail("matching invalid: " + why);
  if (matching_weight(g, out.matching) != out.matching_value)
    fail("matching value wrong");
  if (out.stable) {
    revalidate(g, HalfVector::from_matching(out.matching), out.dual);
  } else {
    if (!(out.fractional_value > out.matching_value))
      fail("unstable verdict without a value gap");
    if (!is_basic(g, out.fractional, &why))
      fail("fractional witness not basic: " + why);
    revalidate(g, out.fractional, out.dual);
  }
  return out;
}

StabReport capacity_stabilizer(const CapGraph& g, GammaMode mode,
                               int oracle_max_edges) {
  Plan plan = make_plan(g, mode, oracle_max_edges);

  StabReport report;
  report.kind = StabKind::kCapacity;
  report.solution.assign(plan.chosen.begin(), plan.chosen.end());
  std::sort(report.solution.begin(), report.solution.end());
  for (std::size_t i = 1; i < report.solution.size(); ++i)
    if (report.solution[i] == report.solution[i - 1])
      fail("capacity solution repeats a vertex");
  report.size = static_cast<int>(report.solution.size());
  if (report.size != plan.mc.cycle_count) fail("one cut per cycle expected");
  report.lower_bound = plan.mc.certified ? plan.mc.cycle_count : 0;
  report.stabilized = g.reduce_capacities(report.solution);

  HalfVector xhat = round_exposing(plan);
  report.matching = xhat.to_matching();
  report.dual = plan.lp.dual;
  revalidate(report.stabilized, xhat, report.dual);

  report.weight_before = max_weight_c_matching(g).value;
  report.weight_after = matching_weight(report.stabilized, report.matching);
  check_weight_floor(report.weight_before, report.weight_after);
  return report;
}

StabReport edge_stabilizer_approx(const CapGraph& g, GammaMode mode,
                                  int oracle_max_edges) {
  Plan plan = make_plan(g, mode, oracle_max_edges);

  StabReport report;
  report.kind = StabKind::kEdge;
  std::vector<char> drop(g.edge_count(), 0);
  for (VertexId v : plan.chosen)
    for (EdgeId e : g.incident(v))
      if (plan.mc.x.halves(e) != 2) drop[e] = 1;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (drop[e]) report.solution.push_back(e);
  report.size = static_cast<int>(report.solution.size());
  if (report.size > g.max_degree() * plan.mc.cycle_count)
    fail("edge solution exceeds the degree bound");
  report.lower_bound = certified_edge_bound(g, plan.mc);
  report.stabilized = g.remove_edges(report.solution);

  // Transfer the rounded point and the dual onto the re-densified edge ids;
  // each chosen vertex's dual value moves onto its surviving matched edges.
  HalfVector xhat = round_exposing(plan);
  std::vector<char> in_s(g.vertex_count(), 0);
  for (VertexId v : plan.chosen) in_s[v] = 1;
  HalfVector xs(report.stabilized.edge_count());
  DualCover ds;
  ds.y = plan.lp.dual.y;
  for (VertexId v : plan.chosen) ds.y[v] = 0;
  ds.z.assign(report.stabilized.edge_count(), Rational(0));
  for (EdgeId e2 = 0; e2 < report.stabilized.edge_count(); ++e2) {
    const Edge& ed = report.stabilized.edge(e2);
    auto orig = g.find_edge(ed.u, ed.v);
    if (!orig) fail("stabilized edge missing from the input graph");
    xs.set_halves(e2, xhat.halves(*orig));
    Rational z = plan.lp.dual.z[*orig];
    if (in_s[ed.u]) z += plan.lp.dual.y[ed.u];
    if (in_s[ed.v]) z += plan.lp.dual.y[ed.v];
    ds.z[e2] = z;
  }
  report.matching = xs.to_matching();
  report.dual = std::move(ds);
  revalidate(report.stabilized, xs, report.dual);

  report.weight_before = max_weight_c_matching(g).value;
  report.weight_after = matching_weight(report.stabilized, report.matching);
  check_weight_floor(report.weight_before, report.weight_after);
  return report;
}

LowerBounds lower_bounds(const CapGraph& g, int oracle_max_edges) {
  MinCycleResult mc =
      min_cycle_optimum(g, GammaMode::kExact, oracle_max_edges);
  if (!mc.certified) fail("exact mode returned an uncertified count");
  return {mc.cycle_count, certified_edge_bound(g, mc)};
}

std::vector<int> minimalize_stabilizer(const CapGraph& g, StabKind kind,
                                       std::vector<int> solution) {
  std::sort(solution.begin(), solution.end());
  if (!is_stable(apply_stabilizer(g, kind, solution)).stable)
    throw InvalidInstance(
        "minimalize_stabilizer: input does not stabilize the graph");
  // Drop attempts run from the highest id down, so low ids are kept
  // preferentially and the result is reproducible. Stability is not
  // monotone under extra reductions, so a drop can re-enable an earlier
  // failed one; passes repeat until none succeeds.
  bool dropped = true;
  while (dropped) {
    dropped = false;
    for (std::size_t i = solution.size(); i-- > 0;) {
      std::vector<int> trial = solution;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      if (is_stable(apply_stabilizer(g, kind, trial)).stable) {
        solution = std::move(trial);
        dropped = true;
      }
    }
  }
  return solution;
}

CapGraph apply_stabilizer(const CapGraph& g, StabKind kind,
                          const std::vector<int>& solution) {
  if (kind == StabKind::kCapacity) return g.reduce_capacities(solution);
  return g.remove_edges(solution);
}

}  // namespace capstab
