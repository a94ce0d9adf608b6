#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "graph.hpp"

namespace capstab {

// Deterministic 64-bit PRNG (splitmix64 update). Used for every seeded
// construction in the library and the test suites so that results are
// reproducible across platforms and standard-library versions.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform draw from {0, ..., bound-1}, by rejection against the largest
  // multiple of bound.
  std::uint64_t below(std::uint64_t bound);

  // Uniform draw from {lo, ..., hi} inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi);
};

// Builds one of the named instance families. Throws InvalidInstance on an
// unknown name or out-of-range parameters.
//
// Families and their parameters (all params optional):
//   fig1       k (int >= 3, default 3), eps (rational in (0,1/2), default
//              1/4). Hub-and-triangles instance: hub a carries k triangles
//              a-b_i-c_i, a pendant edge to u, and a path to the matched
//              pair v-w. Unit capacities.
//   fig2       no params. Nine vertices, unit weights, three capacity-2
//              vertices; unstable, yet its naive vertex-copy expansion
//              is stable.
//   fig2x      no params. The naive vertex-copy expansion of fig2.
//   fig3       no params. Six weighted vertices, one capacity-2 vertex;
//              the fractional optimum beats the integral one by 1/2.
//   fig4       no params. Six vertices, unit weights, one capacity-2
//              vertex joining two triangles through a cut vertex.
//   odd_cycle  k (odd int >= 3, default 5). Unit cycle C_k.
//   path       n (int >= 1, default 4). Unit path P_n.
//   complete   n (int >= 1, default 4). Unit complete graph K_n.
//   random     n (int in [1,64], default 8), m (int, default 3n/2),
//              max_cap (default 2), max_weight (default 3).
//              Seed-deterministic: same params and seed, same graph.
CapGraph generate_family(const std::string& name,
                         const std::map<std::string, std::string>& params,
                         std::uint64_t seed);

// Individual builders, for tests that want typed parameters.
CapGraph make_fig1(int k, const Rational& eps);
CapGraph make_fig2();
CapGraph make_fig3();
CapGraph make_fig4();
CapGraph make_odd_cycle(int k);
CapGraph make_path(int n);
CapGraph make_complete(int n);
CapGraph make_random(int n, int m, int max_cap, int max_weight,
                     std::uint64_t seed);

}  // namespace capstab
