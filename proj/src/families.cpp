#include "families.hpp"

#include <algorithm>
#include <charconv>
#include <initializer_list>
#include <utility>
#include <vector>

#include "unit_reduction.hpp"

namespace capstab {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInstance("random draw with empty range");
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v = next();
  while (v >= limit) v = next();
  return v % bound;
}

std::int64_t SplitMix64::between(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw InvalidInstance("random draw with empty range");
  return lo +
         static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

namespace {

using EdgeSpec = std::tuple<int, int, Rational>;

int param_int(const std::map<std::string, std::string>& params,
              const std::string& key, int fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  int value = 0;
  const char* first = it->second.data();
  const char* last = first + it->second.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw InvalidInstance("parameter '" + key + "' is not an integer: '" +
                          it->second + "'");
  return value;
}

Rational param_rational(const std::map<std::string, std::string>& params,
                        const std::string& key, const Rational& fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  auto parsed = parse_rational(it->second);
  if (!parsed)
    throw InvalidInstance("parameter '" + key + "' is not a rational: '" +
                          it->second + "'");
  return *parsed;
}

void reject_unknown_params(const std::map<std::string, std::string>& params,
                           std::initializer_list<const char*> known) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw InvalidInstance("unknown parameter '" + key + "'");
  }
}

}  // namespace

CapGraph make_fig1(int k, const Rational& eps) {
  if (k < 3) throw InvalidInstance("fig1 requires k >= 3");
  if (!(eps > 0 && eps < Rational(1, 2)))
    throw InvalidInstance("fig1 requires 0 < eps < 1/2");
  std::vector<std::string> names = {"u", "v", "w", "a"};
  for (int i = 1; i <= k; ++i) names.push_back("b" + std::to_string(i));
  for (int i = 1; i <= k; ++i) names.push_back("c" + std::to_string(i));
  std::vector<long long> caps(names.size(), 1);
  const int u = 0, v = 1, w = 2, a = 3;
  std::vector<EdgeSpec> edges;
  edges.emplace_back(u, a, eps);
  edges.emplace_back(v, w, 1);
  edges.emplace_back(w, a, 1);
  for (int i = 0; i < k; ++i) {
    int b = 4 + i;
    int c = 4 + k + i;
    edges.emplace_back(a, b, 2);
    edges.emplace_back(a, c, 1);
    edges.emplace_back(b, c, 2);
  }
  return CapGraph::build(std::move(names), std::move(caps), std::move(edges));
}

CapGraph make_fig2() {
  std::vector<std::string> names = {"t", "u", "v", "x", "y",
                                    "z", "a", "b", "c"};
  const int t = 0, u = 1, v = 2, x = 3, y = 4, z = 5, a = 6, b = 7, c = 8;
  std::vector<long long> caps(9, 1);
  caps[v] = 2;
  caps[x] = 2;
  caps[b] = 2;
  std::vector<EdgeSpec> edges = {
      {t, u, 1}, {u, v, 1}, {v, x, 1}, {x, y, 1}, {x, z, 1},
      {y, z, 1}, {a, b, 1}, {b, c, 1}, {c, v, 1},
  };
  return CapGraph::build(std::move(names), std::move(caps), std::move(edges));
}

CapGraph make_fig3() {
  std::vector<std::string> names = {"a", "b", "c", "d", "e", "f"};
  std::vector<long long> caps(6, 1);
  caps[1] = 2;  // b
  std::vector<EdgeSpec> edges = {
      {0, 1, 5},  // a-b
      {1, 2, 5},  // b-c
      {2, 3, 2},  // c-d
      {3, 4, 1},  // d-e
      {4, 5, 2},  // e-f
      {5, 1, 5},  // f-b
  };
  return CapGraph::build(std::move(names), std::move(caps), std::move(edges));
}

CapGraph make_fig4() {
  std::vector<std::string> names = {"a", "b", "c", "d", "e", "f"};
  std::vector<long long> caps(6, 1);
  caps[2] = 2;  // c
  std::vector<EdgeSpec> edges = {
      {0, 1, 1},  // a-b
      {0, 2, 1},  // a-c
      {1, 2, 1},  // b-c
      {2, 3, 1},  // c-d
      {3, 4, 1},  // d-e
      {3, 5, 1},  // d-f
      {4, 5, 1},  // e-f
  };
  return CapGraph::build(std::move(names), std::move(caps), std::move(edges));
}

CapGraph make_odd_cycle(int k) {
  if (k < 3 || k % 2 == 0)
    throw InvalidInstance("odd_cycle requires odd k >= 3");
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back("v" + std::to_string(i));
  std::vector<long long> caps(names.size(), 1);
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < k; ++i) edges.emplace_back(i, (i + 1) % k, 1);
  return CapGraph::build(std::move(names), std::move(caps), std::move(edges));
}

CapGraph make_path(int n) {
  if (n < 1) throw InvalidInstance("path requires n >= 1");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  std::vector<long long> caps(names.size(), 1);
  std::vector<EdgeSpec> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1, 1);
  return CapGraph::build(std::move(names), std::move(caps), std::move(edges));
}

CapGraph make_complete(int n) {
  if (n < 1) throw InvalidInstance("complete requires n >= 1");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  std::vector<long long> caps(names.size(), 1);
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j, 1);
  return CapGraph::build(std::move(names), std::move(caps), std::move(edges));
}

CapGraph make_random(int n, int m, int max_cap, int max_weight,
                     std::uint64_t seed) {
  if (n < 1 || n > 64) throw InvalidInstance("random requires 1 <= n <= 64");
  if (max_cap < 1) throw InvalidInstance("random requires max_cap >= 1");
  if (max_weight < 1) throw InvalidInstance("random requires max_weight >= 1");
  long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
  if (m < 0 || m > max_edges)
    throw InvalidInstance("random requires 0 <= m <= n*(n-1)/2");
  SplitMix64 rng(seed);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  // Partial Fisher-Yates: the first m slots end up a uniform m-subset.
  for (int i = 0; i < m; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(pairs.size() - i));
    std::swap(pairs[i], pairs[j]);
  }
  pairs.resize(m);
  std::sort(pairs.begin(), pairs.end());

  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  std::vector<long long> caps;
  for (int i = 0; i < n; ++i) caps.push_back(rng.between(1, max_cap));
  std::vector<EdgeSpec> edges;
  for (auto [i, j] : pairs)
    edges.emplace_back(i, j, Rational(rng.between(1, max_weight)));
  return CapGraph::build(std::move(names), std::move(caps), std::move(edges));
}

CapGraph generate_family(const std::string& name,
                         const std::map<std::string, std::string>& params,
                         std::uint64_t seed) {
  if (name == "fig1") {
    reject_unknown_params(params, {"k", "eps"});
    return make_fig1(param_int(params, "k", 3),
                     param_rational(params, "eps", Rational(1, 4)));
  }
  if (name == "fig2") {
    reject_unknown_params(params, {});
    return make_fig2();
  }
  if (name == "fig2x") {
    reject_unknown_params(params, {});
    return naive_vertex_copy_expansion(make_fig2()).graph;
  }
  if (name == "fig3") {
    reject_unknown_params(params, {});
    return make_fig3();
  }
  if (name == "fig4") {
    reject_unknown_params(params, {});
    return make_fig4();
  }
  if (name == "odd_cycle") {
    reject_unknown_params(params, {"k"});
    return make_odd_cycle(param_int(params, "k", 5));
  }
  if (name == "path") {
    reject_unknown_params(params, {"n"});
    return make_path(param_int(params, "n", 4));
  }
  if (name == "complete") {
    reject_unknown_params(params, {"n"});
    return make_complete(param_int(params, "n", 4));
  }
  if (name == "random") {
    reject_unknown_params(params, {"n", "m", "max_cap", "max_weight"});
    int n = param_int(params, "n", 8);
    int m = param_int(params, "m", n + n / 2);
    return make_random(n, m, param_int(params, "max_cap", 2),
                       param_int(params, "max_weight", 3), seed);
  }
  throw InvalidInstance("unknown family '" + name + "'");
}

}  // namespace capstab
