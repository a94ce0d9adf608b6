#include "simplex.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "circuits.hpp"

namespace capstab {

namespace {

// Dense exact-rational tableau for
//   max w^T x  s.t.  x(delta(v)) + s_v = c_v,  x_e + t_e = 1,  all >= 0
// with variables ordered [x_e | s_v | t_e]. Row 0 holds the reduced costs;
// the slack basis is feasible, so no phase one is needed. Bland's rule
// (smallest entering index, smallest leaving basis index on ratio ties)
// rules out cycling and prefers low edge ids among equal improvements.
class Tableau {
 public:
  explicit Tableau(const CapGraph& g)
      : n_(g.edge_count()), m_(g.vertex_count() + g.edge_count()) {
    rows_.assign(m_ + 1, std::vector<Rational>(n_ + m_ + 1, Rational(0)));
    for (EdgeId e = 0; e < n_; ++e) rows_[0][e] = g.edge(e).weight;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      std::vector<Rational>& row = rows_[1 + v];
      for (EdgeId e : g.incident(v)) row[e] = 1;
      row[n_ + v] = 1;
      row.back() = g.capacity(v);
    }
    for (EdgeId e = 0; e < n_; ++e) {
      std::vector<Rational>& row = rows_[1 + g.vertex_count() + e];
      row[e] = 1;
      row[n_ + g.vertex_count() + e] = 1;
      row.back() = 1;
    }
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  void optimize() {
    for (;;) {
      int col = -1;
      for (int c = 0; c < n_ + m_; ++c) {
        if (rows_[0][c] > 0) {
          col = c;
          break;
        }
      }
      if (col < 0) return;
      int row = -1;
      Rational best;
      for (int r = 1; r <= m_; ++r) {
        if (rows_[r][col] <= 0) continue;
        Rational ratio(rows_[r].back() / rows_[r][col]);
        if (row < 0 || ratio < best ||
            (ratio == best && basis_[r - 1] < basis_[row - 1])) {
          row = r;
          best = ratio;
        }
      }
      // Every variable is bounded above, so a pivot row always exists.
      if (row < 0) throw std::logic_error("bounded program reported unbounded");
      pivot(row, col);
    }
  }

  // Value of variable j in the current basic solution.
  Rational value(int j) const {
    for (int r = 1; r <= m_; ++r)
      if (basis_[r - 1] == j) return rows_[r].back();
    return Rational(0);
  }

  // Reduced cost of variable j; under a slack column this is the negated
  // dual value of the corresponding constraint.
  const Rational& reduced_cost(int j) const { return rows_[0][j]; }

 private:
  void pivot(int row, int col) {
    Rational p = rows_[row][col];
    for (Rational& entry : rows_[row]) entry /= p;
    for (int r = 0; r <= m_; ++r) {
      if (r == row) continue;
      Rational f = rows_[r][col];
      if (f == 0) continue;
      for (int c = 0; c <= n_ + m_; ++c) rows_[r][c] -= f * rows_[row][c];
    }
    basis_[row - 1] = col;
  }

  int n_;
  int m_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> basis_;
};

}  // namespace

HalfVector make_basic(const CapGraph& g, HalfVector x) {
  std::string why;
  if (!is_feasible(g, x, &why)) throw InvalidInstance("make_basic: " + why);
  for (;;) {
    if (is_basic(g, x, &why)) return x;

    std::vector<char> used(g.edge_count(), 0);
    std::vector<int> fdeg(g.vertex_count(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (x.halves(e) == 1) {
        ++fdeg[g.edge(e).u];
        ++fdeg[g.edge(e).v];
      }
    }

    bool repaired = false;
    for (EdgeId e0 = 0; e0 < g.edge_count() && !repaired; ++e0) {
      if (x.halves(e0) != 1 || used[e0]) continue;

      // Gather the fractional component containing e0.
      std::vector<EdgeId> comp;
      std::vector<VertexId> verts;
      std::vector<char> visited(g.vertex_count(), 0);
      std::vector<VertexId> stack = {g.edge(e0).u};
      visited[g.edge(e0).u] = 1;
      while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        verts.push_back(v);
        for (EdgeId f : g.incident(v)) {
          if (x.halves(f) != 1) continue;
          if (!used[f]) {
            used[f] = 1;
            comp.push_back(f);
          }
          VertexId w = g.other_end(f, v);
          if (!visited[w]) {
            visited[w] = 1;
            stack.push_back(w);
          }
        }
      }

      // Only clean shapes are repairable: every component vertex on at most
      // two fractional edges, and either no endpoints (a cycle, which must
      // be even to alternate) or exactly two (an open path).
      std::vector<VertexId> ends;
      bool clean = true;
      for (VertexId v : verts) {
        if (fdeg[v] > 2) clean = false;
        if (fdeg[v] == 1) ends.push_back(v);
      }
      if (!clean) continue;
      VertexId start;
      if (ends.empty()) {
        if (comp.size() % 2 != 0) continue;
        start = *std::min_element(verts.begin(), verts.end());
      } else if (ends.size() == 2) {
        start = std::min(ends[0], ends[1]);
      } else {
        continue;
      }

      // Walk the component from `start`, smallest free edge first.
      std::vector<EdgeId> order;
      std::vector<char> taken(g.edge_count(), 0);
      VertexId cur = start;
      for (;;) {
        EdgeId next = -1;
        for (EdgeId f : g.incident(cur)) {
          if (x.halves(f) == 1 && !taken[f]) {
            next = f;
            break;
          }
        }
        if (next < 0) break;
        taken[next] = 1;
        order.push_back(next);
        cur = g.other_end(next, cur);
      }
      if (order.size() != comp.size()) continue;

      // Alternate signs along the walk and keep the direction that does not
      // lose weight; half a step integralizes the whole component.
      std::vector<int> coeffs(g.edge_count(), 0);
      int sign = 1;
      Rational delta(0);
      for (EdgeId f : order) {
        coeffs[f] = sign;
        delta += Rational(sign) * g.edge(f).weight;
        sign = -sign;
      }
      if (delta < 0) {
        for (EdgeId f : order) coeffs[f] = -coeffs[f];
      }
      std::optional<Circuit> circ = classify_circuit(g, coeffs, &why);
      if (!circ) continue;
      CircuitApplication app = apply_circuit(g, x, *circ, Rational(1, 2));
      if (!app.result) {
        for (EdgeId f : order) coeffs[f] = -coeffs[f];
        circ = classify_circuit(g, coeffs, &why);
        if (!circ) continue;
        app = apply_circuit(g, x, *circ, Rational(1, 2));
        if (!app.result) continue;
      }
      x = std::move(*app.result);
      repaired = true;
    }

    if (!repaired)
      throw std::logic_error("point is not an extreme point and cannot be repaired: " + why);
  }
}

LpResult solve_fractional(const CapGraph& g) {
  Tableau tab(g);
  tab.optimize();

  const int n = g.edge_count();
  HalfVector x(static_cast<std::size_t>(n));
  for (EdgeId e = 0; e < n; ++e) {
    Rational doubled(tab.value(e) * 2);
    if (!is_integral(doubled) || doubled < 0 || doubled > 2)
      throw std::logic_error("optimizer left the half-integral range on " +
                             g.edge_label(e));
    x.set_halves(e, static_cast<std::uint8_t>(numerator(doubled).convert_to<int>()));
  }
  x = make_basic(g, std::move(x));

  DualCover dual;
  dual.y.assign(g.vertex_count(), Rational(0));
  dual.z.assign(n, Rational(0));
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    dual.y[v] = Rational(-tab.reduced_cost(n + v));
  for (EdgeId e = 0; e < n; ++e)
    dual.z[e] = Rational(-tab.reduced_cost(n + g.vertex_count() + e));

  // Optimal duals are not unique. Where an edge bound carries weight that a
  // capacity-one endpoint could carry at the same cost, and no other edge
  // at that endpoint is in the primal support, move the weight onto the
  // vertex; complementarity is unaffected (the endpoint is saturated by
  // this very edge). Lower endpoint id wins when both qualify. This
  // collapses the solver's arbitrary stop into a fixed representative.
  for (EdgeId e = 0; e < n; ++e) {
    if (dual.z[e] == 0) continue;
    VertexId ends[2] = {g.edge(e).u, g.edge(e).v};
    if (ends[0] > ends[1]) std::swap(ends[0], ends[1]);
    for (VertexId w : ends) {
      if (g.capacity(w) != 1) continue;
      bool others_clear = true;
      for (EdgeId f : g.incident(w)) {
        if (f != e && x.halves(f) != 0) {
          others_clear = false;
          break;
        }
      }
      if (!others_clear) continue;
      dual.y[w] += dual.z[e];
      dual.z[e] = 0;
      break;
    }
  }

  LpResult out{std::move(x), std::move(dual), Rational(0), Rational(0)};
  out.primal_value = out.primal.weight(g);
  out.dual_value = out.dual.objective(g);

  std::string why;
  if (!is_basic(g, out.primal, &why))
    throw std::logic_error("optimizer postcondition failed: " + why);
  if (!is_dual_feasible(g, out.dual, &why))
    throw std::logic_error("optimizer postcondition failed: " + why);
  std::vector<std::string> broken =
      check_complementary_slackness(g, out.primal, out.dual);
  if (!broken.empty())
    throw std::logic_error("optimizer postcondition failed: " + broken.front());
  if (out.primal_value != out.dual_value)
    throw std::logic_error("optimizer postcondition failed: objective gap");
  return out;
}

}  // namespace capstab
