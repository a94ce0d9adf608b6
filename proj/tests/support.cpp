#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

#include "families.hpp"

namespace capstab::testing {

namespace {

struct Topology {
  int n = 0;
  std::uint32_t mask = 0;  // bit i set when vertex pair i is an edge
  std::vector<std::pair<int, int>> edges;
};

// Vertex pairs of the complete graph on n vertices, in (u, v) lex order.
std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return pairs;
}

bool connected_mask(int n, const std::vector<std::pair<int, int>>& pairs,
                    std::uint32_t mask) {
  std::vector<int> root(n);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  int components = n;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if ((mask & (1u << i)) == 0) continue;
    int a = find(pairs[i].first);
    int b = find(pairs[i].second);
    if (a != b) {
      root[a] = b;
      --components;
    }
  }
  return components == 1;
}

// One representative per isomorphism class of connected graphs on exactly n
// vertices: keep an edge mask only when no vertex relabeling maps it to a
// smaller mask.
std::vector<Topology> connected_topologies(int n) {
  std::vector<std::pair<int, int>> pairs = all_pairs(n);
  int m = static_cast<int>(pairs.size());

  // For each permutation of the vertices, where each edge slot lands.
  std::vector<std::vector<int>> remaps;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> remap(m);
    for (int i = 0; i < m; ++i) {
      int u = perm[pairs[i].first];
      int v = perm[pairs[i].second];
      if (u > v) std::swap(u, v);
      remap[i] = static_cast<int>(
          std::find(pairs.begin(), pairs.end(), std::make_pair(u, v)) -
          pairs.begin());
    }
    remaps.push_back(std::move(remap));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Topology> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (!connected_mask(n, pairs, mask)) continue;
    bool minimal = true;
    for (const auto& remap : remaps) {
      std::uint32_t image = 0;
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) image |= 1u << remap[i];
      if (image < mask) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    Topology t;
    t.n = n;
    t.mask = mask;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) t.edges.push_back(pairs[i]);
    out.push_back(std::move(t));
  }
  return out;
}

// Seeded capacity/weight assignment over a fixed shape. unit_weights pins
// every weight to 1 and leaves only the capacities to the seed.
CapGraph instantiate(const Topology& t, std::uint64_t seed,
                     bool unit_weights) {
  SplitMix64 rng(seed);
  std::vector<std::string> names;
  std::vector<long long> caps;
  names.reserve(t.n);
  for (int v = 0; v < t.n; ++v) {
    names.push_back("v" + std::to_string(v));
    caps.push_back(1 + static_cast<long long>(rng.below(2)));
  }
  std::vector<std::tuple<int, int, Rational>> edges;
  edges.reserve(t.edges.size());
  for (const auto& [u, v] : t.edges) {
    long long w = unit_weights ? 1 : 1 + static_cast<long long>(rng.below(3));
    edges.emplace_back(u, v, Rational(w));
  }
  return CapGraph::build(std::move(names), std::move(caps), std::move(edges));
}

Suite build_suite() {
  Suite suite;
  for (int n = 1; n <= kSuiteMaxVertices; ++n) {
    for (const Topology& t : connected_topologies(n)) {
      std::uint64_t base = (static_cast<std::uint64_t>(t.n) << 40) ^
                           (static_cast<std::uint64_t>(t.mask) << 8);
      for (int k = 0; k < kWeightedAssignments; ++k)
        suite.weighted.push_back(instantiate(t, base ^ k, false));
      for (int k = 0; k < kUnitAssignments; ++k)
        suite.unit.push_back(instantiate(t, base ^ (0x1000u + k), true));
    }
  }
  for (int i = 0; i < kRandomCount; ++i) {
    std::uint64_t seed = 0xace0ull + static_cast<std::uint64_t>(i);
    SplitMix64 rng(seed);
    int n = 2 + static_cast<int>(rng.below(kRandomMaxVertices - 1));
    int cap = std::min(kRandomMaxEdges, n * (n - 1) / 2);
    int m = static_cast<int>(rng.below(static_cast<std::uint64_t>(cap) + 1));
    suite.random.push_back(make_random(n, m, 2, 3, seed));
  }
  return suite;
}

}  // namespace

const Suite& shared_suite() {
  static const Suite suite = build_suite();
  return suite;
}

CapGraph with_unit_weights(const CapGraph& g) {
  std::vector<std::string> names;
  std::vector<long long> caps;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    names.push_back(g.vertex_name(v));
    caps.push_back(g.capacity(v));
  }
  std::vector<std::tuple<int, int, Rational>> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    edges.emplace_back(g.edge(e).u, g.edge(e).v, Rational(1));
  return CapGraph::build(std::move(names), std::move(caps), std::move(edges));
}

bool unit_weighted(const CapGraph& g) {
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).weight != 1) return false;
  return true;
}

std::vector<std::uint32_t> all_c_matching_masks(const CapGraph& g) {
  int m = g.edge_count();
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    CMatching mm = matching_from_mask(g, mask);
    if (validate_c_matching(g, mm)) out.push_back(mask);
  }
  return out;
}

CMatching matching_from_mask(const CapGraph& g, std::uint32_t mask) {
  CMatching mm = CMatching::empty(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (mask & (1u << e)) mm.in[e] = 1;
  return mm;
}

}  // namespace capstab::testing
