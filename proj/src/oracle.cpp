#include "oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace capstab {

namespace {

constexpr long long kNoValue = std::numeric_limits<long long>::min();

// Edge weights scaled to a common integer grid so the inner enumeration
// loops run on plain 64-bit arithmetic. scaled[e] = w_e * denom; a half
// unit of x_e contributes scaled[e], so totals are 2 * denom * (w^T x).
struct ScaledWeights {
  std::vector<long long> scaled;
  long long denom = 1;

  Rational to_rational(long long halves_total) const {
    return Rational(halves_total, 2 * denom);
  }
};

ScaledWeights scale_weights(const CapGraph& g) {
  BigInt denom = 1;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    denom = boost::multiprecision::lcm(denom,
                                       denominator(g.edge(e).weight));
  ScaledWeights out;
  BigInt total = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    BigInt s = numerator(g.edge(e).weight) *
               (denom / denominator(g.edge(e).weight));
    total += 2 * s;
    if (s > std::numeric_limits<long long>::max() / 4)
      throw ScaleError("edge weights too large for the oracle fast path");
    out.scaled.push_back(s.convert_to<long long>());
  }
  if (denom > std::numeric_limits<long long>::max() / 4 ||
      total > std::numeric_limits<long long>::max() / 4)
    throw ScaleError("edge weights too large for the oracle fast path");
  out.denom = denom.convert_to<long long>();
  return out;
}

void require_edge_bound(const CapGraph& g, int max_edges, const char* what) {
  if (g.edge_count() > max_edges)
    throw ScaleError(std::string(what) + ": " +
                     std::to_string(g.edge_count()) + " edges exceeds bound " +
                     std::to_string(max_edges));
}

// Remaining capacity per vertex in half units, clipped to what half
// vectors can use.
std::vector<long long> half_capacities(const CapGraph& g) {
  std::vector<long long> room(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    room[v] = 2 * g.capacity(v);
  return room;
}

struct MatchingSearch {
  const CapGraph& g;
  const ScaledWeights& w;
  std::vector<long long> suffix;  // max scaled gain from edges e..m-1
  std::vector<long long> room;    // integral units left per vertex
  std::vector<EdgeId> chosen;
  long long value = 0;
  long long best_value = kNoValue;
  std::vector<EdgeId> best_set;

  void run(EdgeId e) {
    if (e == g.edge_count()) {
      if (value > best_value ||
          (value == best_value && chosen < best_set)) {
        best_value = value;
        best_set = chosen;
      }
      return;
    }
    if (best_value != kNoValue && value + suffix[e] < best_value) return;
    const Edge& ed = g.edge(e);
    if (room[ed.u] > 0 && room[ed.v] > 0) {
      --room[ed.u];
      --room[ed.v];
      chosen.push_back(e);
      value += w.scaled[e];
      run(e + 1);
      value -= w.scaled[e];
      chosen.pop_back();
      ++room[ed.u];
      ++room[ed.v];
    }
    run(e + 1);
  }
};

}  // namespace

BruteMatchingResult brute_max_c_matching(const CapGraph& g, int max_edges) {
  require_edge_bound(g, max_edges, "brute_max_c_matching");
  ScaledWeights w = scale_weights(g);
  MatchingSearch search{g, w, {}, {}, {}, 0, kNoValue, {}};
  search.suffix.assign(g.edge_count() + 1, 0);
  for (EdgeId e = g.edge_count(); e-- > 0;)
    search.suffix[e] = search.suffix[e + 1] + w.scaled[e];
  search.room.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    search.room[v] = g.capacity(v);
  search.run(0);

  BruteMatchingResult out{CMatching::empty(g), Rational(0)};
  for (EdgeId e : search.best_set) out.matching.in[e] = 1;
  out.value = Rational(search.best_value, w.denom);
  return out;
}

namespace {

struct FractionalSearch {
  const CapGraph& g;
  const ScaledWeights& w;
  std::vector<long long> suffix;  // max scaled halves gain from e..m-1
  std::vector<long long> room;    // half units left per vertex
  long long value = 0;
  long long best = 0;

  void run(EdgeId e) {
    if (e == g.edge_count()) {
      best = std::max(best, value);
      return;
    }
    if (value + suffix[e] <= best) return;
    const Edge& ed = g.edge(e);
    int cap = static_cast<int>(
        std::min<long long>(2, std::min(room[ed.u], room[ed.v])));
    for (int h = cap; h >= 0; --h) {
      room[ed.u] -= h;
      room[ed.v] -= h;
      value += h * w.scaled[e];
      run(e + 1);
      value -= h * w.scaled[e];
      room[ed.u] += h;
      room[ed.v] += h;
    }
  }
};

}  // namespace

Rational brute_fractional_value(const CapGraph& g, int max_edges) {
  require_edge_bound(g, max_edges, "brute_fractional_value");
  ScaledWeights w = scale_weights(g);
  FractionalSearch search{g, w, {}, {}, 0, 0};
  search.suffix.assign(g.edge_count() + 1, 0);
  for (EdgeId e = g.edge_count(); e-- > 0;)
    search.suffix[e] = search.suffix[e + 1] + 2 * w.scaled[e];
  search.room = half_capacities(g);
  search.run(0);
  return w.to_rational(search.best);
}

bool brute_is_stable(const CapGraph& g, int max_edges) {
  return brute_max_c_matching(g, max_edges).value ==
         brute_fractional_value(g, max_edges);
}

namespace {

struct OptimaSearch {
  const CapGraph& g;
  const ScaledWeights& w;
  long long target;               // scaled optimum, in half units
  std::vector<long long> suffix;
  std::vector<long long> room;
  HalfVector x;
  long long value = 0;
  BasicOptima* out;

  void run(EdgeId e) {
    if (value + suffix[e] < target) return;
    if (e == g.edge_count()) {
      if (value != target) return;
      SupportDecomposition dec = decompose_support(g, x);
      if (!dec.basic) return;
      int cycles = static_cast<int>(dec.cycles.size());
      if (out->optima.empty() || cycles < out->min_cycles) {
        out->min_cycles = cycles;
        out->min_cycle_witness = x;
      }
      out->optima.push_back(x);
      return;
    }
    const Edge& ed = g.edge(e);
    int cap = static_cast<int>(
        std::min<long long>(2, std::min(room[ed.u], room[ed.v])));
    for (int h = 0; h <= cap; ++h) {
      room[ed.u] -= h;
      room[ed.v] -= h;
      value += h * w.scaled[e];
      x.set_halves(e, static_cast<std::uint8_t>(h));
      run(e + 1);
      x.set_halves(e, 0);
      value -= h * w.scaled[e];
      room[ed.u] += h;
      room[ed.v] += h;
    }
  }
};

}  // namespace

BasicOptima brute_basic_optima(const CapGraph& g, int max_edges) {
  require_edge_bound(g, max_edges, "brute_basic_optima");
  ScaledWeights w = scale_weights(g);
  BasicOptima out;
  out.value = brute_fractional_value(g, max_edges);

  OptimaSearch search{g, w, 0, {}, {}, {}, 0, nullptr};
  Rational scaled_opt = out.value * 2 * w.denom;
  search.target = numerator(scaled_opt).convert_to<long long>();
  search.suffix.assign(g.edge_count() + 1, 0);
  for (EdgeId e = g.edge_count(); e-- > 0;)
    search.suffix[e] = search.suffix[e + 1] + 2 * w.scaled[e];
  search.room = half_capacities(g);
  search.x = HalfVector(g.edge_count());
  search.out = &out;
  search.run(0);
  return out;
}

namespace {

struct GuidedSearch {
  const CapGraph& g;
  const DualCover& dual;
  const ScaledWeights& w;
  std::vector<int> fixed;          // -1 free, else forced halves
  std::vector<long long> room;     // half units left per vertex
  std::vector<long long> pending;  // half units still assignable per vertex
  std::vector<char> must_saturate;
  HalfVector x;
  long long nodes_left;
  bool aborted = false;
  BasicOptima* out;

  bool endpoint_ok(VertexId v) {
    // A y-positive vertex must still be able to reach saturation with the
    // half units its unprocessed edges can contribute.
    if (!must_saturate[v]) return true;
    return room[v] <= pending[v];
  }

  void run(EdgeId e) {
    if (aborted) return;
    if (--nodes_left < 0) {
      aborted = true;
      return;
    }
    if (e == g.edge_count()) {
      if (!check_complementary_slackness(g, x, dual).empty()) return;
      SupportDecomposition dec = decompose_support(g, x);
      if (!dec.basic) return;
      int cycles = static_cast<int>(dec.cycles.size());
      if (out->optima.empty() || cycles < out->min_cycles) {
        out->min_cycles = cycles;
        out->min_cycle_witness = x;
      }
      out->optima.push_back(x);
      return;
    }
    const Edge& ed = g.edge(e);
    int lo = fixed[e] >= 0 ? fixed[e] : 0;
    int hi = fixed[e] >= 0 ? fixed[e] : 2;
    for (int h = lo; h <= hi; ++h) {
      if (h > room[ed.u] || h > room[ed.v]) continue;
      room[ed.u] -= h;
      room[ed.v] -= h;
      pending[ed.u] -= hi;
      pending[ed.v] -= hi;
      x.set_halves(e, static_cast<std::uint8_t>(h));
      if (endpoint_ok(ed.u) && endpoint_ok(ed.v)) run(e + 1);
      x.set_halves(e, 0);
      pending[ed.u] += hi;
      pending[ed.v] += hi;
      room[ed.u] += h;
      room[ed.v] += h;
    }
  }
};

}  // namespace

std::optional<BasicOptima> guided_basic_optima(const CapGraph& g,
                                               const DualCover& dual,
                                               long long node_limit) {
  std::string why;
  if (!is_dual_feasible(g, dual, &why))
    throw InvalidInstance("guided enumeration needs a feasible dual: " + why);
  ScaledWeights w = scale_weights(g);

  GuidedSearch search{g, dual, w, {}, {}, {}, {}, {}, 0, false, nullptr};
  search.fixed.assign(g.edge_count(), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    bool tight = dual.y[ed.u] + dual.y[ed.v] + dual.z[e] == ed.weight;
    if (!tight)
      search.fixed[e] = 0;  // slack edge cannot carry weight
    else if (dual.z[e] > 0)
      search.fixed[e] = 2;  // positive z forces the edge to 1
  }
  search.room = half_capacities(g);
  search.pending.assign(g.vertex_count(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    int most = search.fixed[e] >= 0 ? search.fixed[e] : 2;
    search.pending[g.edge(e).u] += most;
    search.pending[g.edge(e).v] += most;
  }
  search.must_saturate.assign(g.vertex_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    search.must_saturate[v] = dual.y[v] > 0;
    if (search.must_saturate[v] && search.room[v] > search.pending[v])
      return BasicOptima{};  // saturation impossible, dual cannot be optimal
  }
  search.x = HalfVector(g.edge_count());
  search.nodes_left = node_limit;
  BasicOptima out;
  search.out = &out;
  search.run(0);
  if (search.aborted) return std::nullopt;
  if (!out.optima.empty()) out.value = out.optima.front().weight(g);
  return out;
}

namespace {

// Recursive lexicographic enumeration of capacity reduction multisets of a
// fixed total size. Returns true when a stabilizing multiset was found.
bool multiset_search(const CapGraph& g, int max_edges, VertexId from,
                     int left, std::vector<VertexId>& picked,
                     std::vector<long long>& room,
                     std::vector<VertexId>& found) {
  if (left == 0) {
    if (brute_is_stable(g.reduce_capacities(picked), max_edges)) {
      found = picked;
      return true;
    }
    return false;
  }
  for (VertexId v = from; v < g.vertex_count(); ++v) {
    if (room[v] == 0) continue;
    --room[v];
    picked.push_back(v);
    if (multiset_search(g, max_edges, v, left - 1, picked, room, found))
      return true;
    picked.pop_back();
    ++room[v];
  }
  return false;
}

}  // namespace

CapacityStabilizerWitness brute_min_capacity_stabilizer(const CapGraph& g,
                                                        int max_edges) {
  require_edge_bound(g, max_edges, "brute_min_capacity_stabilizer");
  CapacityStabilizerWitness out;
  long long total_cap = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) total_cap += g.capacity(v);
  for (int size = 0; size <= total_cap; ++size) {
    std::vector<VertexId> picked;
    std::vector<long long> room(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) room[v] = g.capacity(v);
    std::vector<VertexId> found;
    if (multiset_search(g, max_edges, 0, size, picked, room, found)) {
      out.size = size;
      out.vertices = found;
      return out;
    }
  }
  throw InvalidInstance("no capacity stabilizer found; unreachable");
}

namespace {

bool subset_search(const CapGraph& g, bool weight_preserving,
                   const Rational& base_value, int max_edges, EdgeId from,
                   int left, std::vector<EdgeId>& picked,
                   std::vector<EdgeId>& found) {
  if (left == 0) {
    CapGraph reduced = g.remove_edges(picked);
    if (!brute_is_stable(reduced, max_edges)) return false;
    if (weight_preserving &&
        brute_max_c_matching(reduced, max_edges).value != base_value)
      return false;
    found = picked;
    return true;
  }
  for (EdgeId e = from; e + left <= g.edge_count(); ++e) {
    picked.push_back(e);
    if (subset_search(g, weight_preserving, base_value, max_edges, e + 1,
                      left - 1, picked, found))
      return true;
    picked.pop_back();
  }
  return false;
}

}  // namespace

EdgeStabilizerWitness brute_min_edge_stabilizer(const CapGraph& g,
                                                bool weight_preserving,
                                                int max_edges) {
  require_edge_bound(g, max_edges, "brute_min_edge_stabilizer");
  Rational base = brute_max_c_matching(g, max_edges).value;
  EdgeStabilizerWitness out;
  for (int size = 0; size <= g.edge_count(); ++size) {
    std::vector<EdgeId> picked;
    std::vector<EdgeId> found;
    if (subset_search(g, weight_preserving, base, max_edges, 0, size, picked,
                      found)) {
      out.size = size;
      out.edges = found;
      return out;
    }
  }
  // Unreachable: dropping every edge outside a maximum c-matching always
  // stabilizes and preserves the weight.
  throw InvalidInstance("no edge stabilizer found");
}

namespace {

int rational_rank(std::vector<std::vector<Rational>> rows) {
  int rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < cols; ++col) {
    std::size_t pivot = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || rows[r][col] == 0) continue;
      Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < cols; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

// Tight constraint rows of x: bound rows for edges at 0 or 1, capacity rows
// for saturated vertices.
std::vector<std::vector<Rational>> tight_rows(const CapGraph& g,
                                              const HalfVector& x) {
  std::vector<std::vector<Rational>> rows;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (x.halves(e) == 0 || x.halves(e) == 2) {
      std::vector<Rational> row(g.edge_count(), 0);
      row[e] = 1;
      rows.push_back(std::move(row));
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (x.degree_halves(g, v) == 2 * g.capacity(v)) {
      std::vector<Rational> row(g.edge_count(), 0);
      for (EdgeId e : g.incident(v)) row[e] += 1;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<std::vector<Rational>> shared_tight_rows(const CapGraph& g,
                                                     const HalfVector& a,
                                                     const HalfVector& b) {
  std::vector<std::vector<Rational>> rows;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if ((a.halves(e) == 0 && b.halves(e) == 0) ||
        (a.halves(e) == 2 && b.halves(e) == 2)) {
      std::vector<Rational> row(g.edge_count(), 0);
      row[e] = 1;
      rows.push_back(std::move(row));
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (a.degree_halves(g, v) == 2 * g.capacity(v) &&
        b.degree_halves(g, v) == 2 * g.capacity(v)) {
      std::vector<Rational> row(g.edge_count(), 0);
      for (EdgeId e : g.incident(v)) row[e] += 1;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

struct FeasibleScan {
  const CapGraph& g;
  std::vector<long long> room;
  HalfVector x;
  std::vector<HalfVector> found;

  void run(EdgeId e) {
    if (e == g.edge_count()) {
      found.push_back(x);
      return;
    }
    const Edge& ed = g.edge(e);
    int cap = static_cast<int>(
        std::min<long long>(2, std::min(room[ed.u], room[ed.v])));
    for (int h = 0; h <= cap; ++h) {
      room[ed.u] -= h;
      room[ed.v] -= h;
      x.set_halves(e, static_cast<std::uint8_t>(h));
      run(e + 1);
      x.set_halves(e, 0);
      room[ed.u] += h;
      room[ed.v] += h;
    }
  }
};

}  // namespace

bool oracle_is_vertex(const CapGraph& g, const HalfVector& x) {
  return rational_rank(tight_rows(g, x)) == g.edge_count();
}

bool oracle_adjacent(const CapGraph& g, const HalfVector& a,
                     const HalfVector& b) {
  return rational_rank(shared_tight_rows(g, a, b)) == g.edge_count() - 1;
}

PolytopeVertexGraph enumerate_polytope_vertices(const CapGraph& g,
                                                int max_edges) {
  require_edge_bound(g, max_edges, "enumerate_polytope_vertices");
  FeasibleScan scan{g, half_capacities(g), HalfVector(g.edge_count()), {}};
  scan.run(0);
  PolytopeVertexGraph out;
  for (HalfVector& x : scan.found)
    if (oracle_is_vertex(g, x)) out.vertices.push_back(std::move(x));
  for (std::size_t i = 0; i < out.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < out.vertices.size(); ++j)
      if (oracle_adjacent(g, out.vertices[i], out.vertices[j]))
        out.adjacency.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return out;
}

}  // namespace capstab
