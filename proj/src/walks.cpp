#include "walks.hpp"

#include <algorithm>
#include <sstream>

namespace capstab {

WalkRecord WalkRecord::trace(const CapGraph& g, VertexId start,
                             std::vector<EdgeId> steps) {
  if (start < 0 || start >= g.vertex_count()) {
    throw InvalidInstance("walk start vertex is out of range");
  }
  VertexId cur = start;
  for (EdgeId e : steps) {
    if (e < 0 || e >= g.edge_count()) {
      throw InvalidInstance("walk step is not an edge id");
    }
    const Edge& ed = g.edge(e);
    if (ed.u != cur && ed.v != cur) {
      throw InvalidInstance("walk step " + g.edge_label(e) +
                            " does not continue from " + g.vertex_name(cur));
    }
    cur = g.other_end(e, cur);
  }
  WalkRecord w;
  w.start = start;
  w.end = cur;
  w.steps = std::move(steps);
  return w;
}

bool WalkRecord::is_trail() const {
  std::vector<EdgeId> seen(steps);
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

std::vector<int> WalkRecord::kappa(std::size_t edge_count) const {
  std::vector<int> counts(edge_count, 0);
  for (EdgeId e : steps) ++counts[e];
  return counts;
}

std::vector<VertexId> WalkRecord::vertex_sequence(const CapGraph& g) const {
  std::vector<VertexId> seq;
  seq.reserve(steps.size() + 1);
  seq.push_back(start);
  VertexId cur = start;
  for (EdgeId e : steps) {
    cur = g.other_end(e, cur);
    seq.push_back(cur);
  }
  return seq;
}

std::string WalkRecord::describe(const CapGraph& g) const {
  std::ostringstream out;
  out << g.vertex_name(start);
  VertexId cur = start;
  for (EdgeId e : steps) {
    cur = g.other_end(e, cur);
    out << " -" << g.edge_label(e) << "- " << g.vertex_name(cur);
  }
  return out.str();
}

namespace {

// Edges of W with odd multiplicity; toggling exactly these realizes the
// symmetric difference of M with the walk's edge multiset.
std::vector<char> odd_kappa_mask(const WalkRecord& w, std::size_t edge_count) {
  std::vector<char> odd(edge_count, 0);
  for (EdgeId e : w.steps) odd[e] ^= 1;
  return odd;
}

CMatching toggled(const CMatching& m, const std::vector<char>& odd) {
  CMatching out = m;
  for (std::size_t e = 0; e < odd.size(); ++e) {
    if (odd[e]) out.in[e] = !out.in[e];
  }
  return out;
}

}  // namespace

WalkFlags classify_walk(const CapGraph& g, const CMatching& m,
                        const WalkRecord& w) {
  WalkFlags flags;

  flags.alternating = true;
  for (std::size_t i = 0; i + 1 < w.steps.size(); ++i) {
    if (m.contains(w.steps[i]) == m.contains(w.steps[i + 1])) {
      flags.alternating = false;
      break;
    }
  }
  if (!flags.alternating) return flags;

  Rational gained = 0, paid = 0;
  for (EdgeId e : w.steps) {
    (m.contains(e) ? paid : gained) += g.edge(e).weight;
  }
  flags.augmenting = gained > paid;

  if (w.steps.empty()) {
    flags.proper = flags.feasible = true;
    return flags;
  }

  const bool first_matched = m.contains(w.steps.front());
  const bool last_matched = m.contains(w.steps.back());
  const int du = degree_in_matching(g, m, w.start);
  const int dv = degree_in_matching(g, m, w.end);

  if (!w.closed()) {
    bool ok_start = first_matched || du <= g.capacity(w.start) - 1;
    bool ok_end = last_matched || dv <= g.capacity(w.end) - 1;
    flags.feasible = ok_start && ok_end;
    flags.proper = flags.feasible;
  } else if (w.length() % 2 == 0) {
    flags.proper = flags.feasible = true;
  } else {
    bool both_matched = first_matched && last_matched;
    flags.proper = both_matched || du <= g.capacity(w.start) - 2;
    flags.feasible = both_matched || du <= g.capacity(w.start) - 1;
  }

  if (!w.is_trail()) {
    // With repeated edges, two visits can toggle the same edge back on and
    // overload an interior vertex, something the endpoint conditions cannot
    // see. Decide properness from the toggled matching itself.
    flags.proper = validate_c_matching(g, toggled(m, odd_kappa_mask(w, g.edge_count())));
  }
  return flags;
}

std::vector<Rational> epsilon_augmentation(const CapGraph& g,
                                           const CMatching& m,
                                           const WalkRecord& w,
                                           const Rational& eps) {
  if (eps <= 0) throw InvalidInstance("epsilon must be positive");
  if (!classify_walk(g, m, w).alternating) {
    throw InvalidInstance("epsilon-augmentation needs an alternating walk");
  }
  std::vector<int> kappa = w.kappa(g.edge_count());
  std::vector<Rational> x(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    x[e] = m.contains(e) ? Rational(1) - kappa[e] * eps : kappa[e] * eps;
  }
  return x;
}

CMatching apply_walk(const CapGraph& g, const CMatching& m,
                     const WalkRecord& w) {
  if (!classify_walk(g, m, w).proper) {
    throw InvalidInstance("walk is not proper for this matching");
  }
  return toggled(m, odd_kappa_mask(w, g.edge_count()));
}

HalfVector alternate_round(const CapGraph& g, const HalfVector& x,
                           const std::vector<EdgeId>& cycle, VertexId v,
                           RoundMode mode) {
  if (cycle.empty() || cycle.size() % 2 == 0) {
    throw InvalidInstance("alternate_round needs an odd cycle");
  }
  for (EdgeId e : cycle) {
    if (x.halves(e) != 1) {
      throw InvalidInstance("cycle edge " + g.edge_label(e) +
                            " is not a half-edge of x");
    }
  }
  std::vector<VertexId> verts = SupportDecomposition::cycle_vertices(g, cycle);
  auto at = std::find(verts.begin(), verts.end(), v);
  if (at == verts.end()) {
    throw InvalidInstance("vertex " + g.vertex_name(v) + " is not on the cycle");
  }

  // Rotate so the cycle's edge list starts at v, then alternate. Exposing
  // zeroes the two edges touching v (positions 0 and last, both even since
  // the length is odd); covering flips the pattern.
  std::size_t offset = static_cast<std::size_t>(at - verts.begin());
  HalfVector out = x;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    EdgeId e = cycle[(offset + i) % cycle.size()];
    bool odd_position = (i % 2 == 1);
    bool to_one = (mode == RoundMode::kExposing) ? odd_position : !odd_position;
    out.set_halves(e, to_one ? 2 : 0);
  }
  return out;
}

}  // namespace capstab
