#include "blossom.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace capstab {

namespace {

void check(bool ok, const char* what) {
  if (!ok)
    throw std::logic_error(std::string("matching engine invariant: ") + what);
}

// Python-style list index: negative values count from the end.
int wrap(int j, int len) {
  j %= len;
  if (j < 0) j += len;
  return j;
}

// Primal-dual matching state. Vertices are 0..n-1, blossoms n..2n-1.
// Endpoint p in [0, 2m) denotes edge p/2 seen from one side; endpoint[p]
// is the vertex on that side, and p^1 is the opposite side. Vertex duals
// carry doubled units so that all arithmetic stays integral.
struct Matcher {
  const std::vector<UnitEdge>& edges;
  int n;
  int m;

  std::vector<int> endpoint;                    // 2m
  std::vector<std::vector<int>> neighbend;      // per vertex: remote endpoints
  std::vector<int> mate;                        // vertex -> remote endpoint
  std::vector<int> label;                       // 0 free, 1 S, 2 T; bit 4 marks
  std::vector<int> labelend;                    // endpoint the label came from
  std::vector<int> inblossom;                   // vertex -> top-level blossom
  std::vector<int> blossomparent;               // 2n
  std::vector<std::vector<int>> blossomchilds;  // sub-blossom cycle
  std::vector<int> blossombase;
  std::vector<std::vector<int>> blossomendps;   // connecting endpoints
  std::vector<int> bestedge;                    // least-slack edge per blossom
  std::vector<std::vector<int>> blossombestedges;
  std::vector<char> has_best_list;
  std::vector<int> unusedblossoms;
  std::vector<long long> dualvar;               // 2n
  std::vector<char> allowedge;                  // per edge: slack zero
  std::vector<int> queue;

  Matcher(int vertex_count, const std::vector<UnitEdge>& es)
      : edges(es), n(vertex_count), m(static_cast<int>(es.size())) {
    long long maxweight = 0;
    for (const UnitEdge& e : edges) maxweight = std::max(maxweight, e.weight);
    endpoint.resize(2 * m);
    neighbend.assign(n, {});
    for (int k = 0; k < m; ++k) {
      endpoint[2 * k] = edges[k].u;
      endpoint[2 * k + 1] = edges[k].v;
      neighbend[edges[k].u].push_back(2 * k + 1);
      neighbend[edges[k].v].push_back(2 * k);
    }
    mate.assign(n, -1);
    label.assign(2 * n, 0);
    labelend.assign(2 * n, -1);
    inblossom.resize(n);
    for (int v = 0; v < n; ++v) inblossom[v] = v;
    blossomparent.assign(2 * n, -1);
    blossomchilds.assign(2 * n, {});
    blossombase.assign(2 * n, -1);
    for (int v = 0; v < n; ++v) blossombase[v] = v;
    blossomendps.assign(2 * n, {});
    bestedge.assign(2 * n, -1);
    blossombestedges.assign(2 * n, {});
    has_best_list.assign(2 * n, 0);
    for (int b = 2 * n - 1; b >= n; --b) unusedblossoms.push_back(b);
    dualvar.assign(2 * n, 0);
    for (int v = 0; v < n; ++v) dualvar[v] = maxweight;
    allowedge.assign(m, 0);
  }

  long long slack(int k) const {
    return dualvar[edges[k].u] + dualvar[edges[k].v] - 2 * edges[k].weight;
  }

  void collect_leaves(int b, std::vector<int>& out) const {
    if (b < n) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds[b]) collect_leaves(t, out);
  }

  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    collect_leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p) {
    int b = inblossom[w];
    check(label[w] == 0 && label[b] == 0, "label must be fresh");
    label[w] = label[b] = t;
    labelend[w] = labelend[b] = p;
    bestedge[w] = bestedge[b] = -1;
    if (t == 1) {
      for (int v : leaves(b)) queue.push_back(v);
    } else {
      int base = blossombase[b];
      check(mate[base] >= 0, "T-target must be matched");
      assign_label(endpoint[mate[base]], 1, mate[base] ^ 1);
    }
  }

  // Trace back from both sides of an edge joining two S-blossoms; returns
  // the base of the first common ancestor, or -1 when the paths end at
  // different roots (then the edge augments).
  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom[v];
      if (label[b] & 4) {
        base = blossombase[b];
        break;
      }
      check((label[b] & 3) == 1, "trace must walk S-blossoms");
      path.push_back(b);
      label[b] |= 4;
      check(labelend[b] == mate[blossombase[b]], "S-label came from the mate");
      if (labelend[b] == -1) {
        v = -1;
      } else {
        v = endpoint[labelend[b]];
        b = inblossom[v];
        check((label[b] & 3) == 2, "predecessor must be a T-blossom");
        check(labelend[b] >= 0, "T-blossom must have an origin");
        v = endpoint[labelend[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label[b] &= ~4;
    return base;
  }

  // Shrink the cycle through edge k and the common base into a new blossom.
  void add_blossom(int base, int k) {
    int v = edges[k].u;
    int w = edges[k].v;
    int bb = inblossom[base];
    int bv = inblossom[v];
    int bw = inblossom[w];
    check(!unusedblossoms.empty(), "blossom ids exhausted");
    int b = unusedblossoms.back();
    unusedblossoms.pop_back();
    blossombase[b] = base;
    blossomparent[b] = -1;
    blossomparent[bb] = b;
    std::vector<int> path;
    std::vector<int> endps;
    while (bv != bb) {
      blossomparent[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend[bv]);
      check(label[bv] == 2 ||
                (label[bv] == 1 && labelend[bv] == mate[blossombase[bv]]),
            "cycle member has a usable label");
      check(labelend[bv] >= 0, "cycle member has an origin");
      v = endpoint[labelend[bv]];
      bv = inblossom[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend[bw] ^ 1);
      check(label[bw] == 2 ||
                (label[bw] == 1 && labelend[bw] == mate[blossombase[bw]]),
            "cycle member has a usable label");
      check(labelend[bw] >= 0, "cycle member has an origin");
      w = endpoint[labelend[bw]];
      bw = inblossom[w];
    }
    check(label[bb] == 1, "blossom base keeps the S-label");
    blossomchilds[b] = std::move(path);
    blossomendps[b] = std::move(endps);
    label[b] = 1;
    labelend[b] = labelend[bb];
    dualvar[b] = 0;
    for (int lv : leaves(b)) {
      if (label[inblossom[lv]] == 2) queue.push_back(lv);
      inblossom[lv] = b;
    }
    // Merge least-slack edge lists of the absorbed blossoms.
    std::vector<int> bestedgeto(2 * n, -1);
    for (int child : blossomchilds[b]) {
      std::vector<std::vector<int>> nblists;
      if (!has_best_list[child]) {
        for (int lv : leaves(child)) {
          nblists.emplace_back();
          for (int p : neighbend[lv]) nblists.back().push_back(p / 2);
        }
      } else {
        nblists.push_back(blossombestedges[child]);
      }
      for (const std::vector<int>& nblist : nblists) {
        for (int ek : nblist) {
          int i = edges[ek].u;
          int j = edges[ek].v;
          if (inblossom[j] == b) std::swap(i, j);
          int bj = inblossom[j];
          if (bj != b && label[bj] == 1 &&
              (bestedgeto[bj] == -1 || slack(ek) < slack(bestedgeto[bj])))
            bestedgeto[bj] = ek;
        }
      }
      blossombestedges[child].clear();
      has_best_list[child] = 0;
      bestedge[child] = -1;
    }
    blossombestedges[b].clear();
    for (int ek : bestedgeto)
      if (ek != -1) blossombestedges[b].push_back(ek);
    has_best_list[b] = 1;
    bestedge[b] = -1;
    for (int ek : blossombestedges[b])
      if (bestedge[b] == -1 || slack(ek) < slack(bestedge[b]))
        bestedge[b] = ek;
  }

  // Undo a blossom, either because its dual hit zero mid-stage (relabel the
  // even-depth children along the entry path) or at stage end.
  void expand_blossom(int b, bool endstage) {
    for (int s : blossomchilds[b]) {
      blossomparent[s] = -1;
      if (s < n) {
        inblossom[s] = s;
      } else if (endstage && dualvar[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (int lv : leaves(s)) inblossom[lv] = s;
      }
    }
    if (!endstage && label[b] == 2) {
      check(labelend[b] >= 0, "expanded T-blossom has an origin");
      int entrychild = inblossom[endpoint[labelend[b] ^ 1]];
      int len = static_cast<int>(blossomchilds[b].size());
      int j = static_cast<int>(
          std::find(blossomchilds[b].begin(), blossomchilds[b].end(),
                    entrychild) -
          blossomchilds[b].begin());
      check(j < len, "entry child is on the cycle");
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend[b];
      while (j != 0) {
        label[endpoint[p ^ 1]] = 0;
        label[endpoint[blossomendps[b][wrap(j - endptrick, len)] ^ endptrick ^
                       1]] = 0;
        assign_label(endpoint[p ^ 1], 2, p);
        allowedge[blossomendps[b][wrap(j - endptrick, len)] / 2] = 1;
        j += jstep;
        p = blossomendps[b][wrap(j - endptrick, len)] ^ endptrick;
        allowedge[p / 2] = 1;
        j += jstep;
      }
      int bv = blossomchilds[b][0];
      label[endpoint[p ^ 1]] = label[bv] = 2;
      labelend[endpoint[p ^ 1]] = labelend[bv] = p;
      bestedge[bv] = -1;
      j += jstep;
      while (blossomchilds[b][wrap(j, len)] != entrychild) {
        bv = blossomchilds[b][wrap(j, len)];
        if (label[bv] == 1) {
          j += jstep;
          continue;
        }
        int labeled = -1;
        for (int lv : leaves(bv)) {
          if (label[lv] != 0) {
            labeled = lv;
            break;
          }
        }
        if (labeled >= 0) {
          check(label[labeled] == 2, "inner leaf label is T");
          check(inblossom[labeled] == bv, "leaf sits in this child");
          label[labeled] = 0;
          label[endpoint[mate[blossombase[bv]]]] = 0;
          assign_label(labeled, 2, labelend[labeled]);
        }
        j += jstep;
      }
    }
    label[b] = -1;
    labelend[b] = -1;
    blossomchilds[b].clear();
    blossomendps[b].clear();
    blossombase[b] = -1;
    blossombestedges[b].clear();
    has_best_list[b] = 0;
    bestedge[b] = -1;
    unusedblossoms.push_back(b);
  }

  // Rotate blossom b so that vertex v becomes its base, flipping the
  // matching along the internal cycle.
  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent[t] != b) t = blossomparent[t];
    if (t >= n) augment_blossom(t, v);
    int len = static_cast<int>(blossomchilds[b].size());
    int i = static_cast<int>(
        std::find(blossomchilds[b].begin(), blossomchilds[b].end(), t) -
        blossomchilds[b].begin());
    check(i < len, "pivot child is on the cycle");
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = blossomchilds[b][wrap(j, len)];
      int p = blossomendps[b][wrap(j - endptrick, len)] ^ endptrick;
      if (t >= n) augment_blossom(t, endpoint[p]);
      j += jstep;
      t = blossomchilds[b][wrap(j, len)];
      if (t >= n) augment_blossom(t, endpoint[p ^ 1]);
      mate[endpoint[p]] = p ^ 1;
      mate[endpoint[p ^ 1]] = p;
    }
    std::rotate(blossomchilds[b].begin(), blossomchilds[b].begin() + i,
                blossomchilds[b].end());
    std::rotate(blossomendps[b].begin(), blossomendps[b].begin() + i,
                blossomendps[b].end());
    blossombase[b] = blossombase[blossomchilds[b][0]];
    check(blossombase[b] == v, "rotation moved the base to v");
  }

  // Swap matched and unmatched edges along the two alternating trees joined
  // by edge k.
  void augment_matching(int k) {
    const int sides[2][2] = {{edges[k].u, 2 * k + 1}, {edges[k].v, 2 * k}};
    for (const auto& side : sides) {
      int s = side[0];
      int p = side[1];
      for (;;) {
        int bs = inblossom[s];
        check(label[bs] == 1, "augmenting path walks S-blossoms");
        check(labelend[bs] == mate[blossombase[bs]], "S-label came from mate");
        if (bs >= n) augment_blossom(bs, s);
        mate[s] = p;
        if (labelend[bs] == -1) break;
        int t = endpoint[labelend[bs]];
        int bt = inblossom[t];
        check(label[bt] == 2, "path alternates with T-blossoms");
        check(labelend[bt] >= 0, "T-blossom has an origin");
        s = endpoint[labelend[bt]];
        int j = endpoint[labelend[bt] ^ 1];
        check(blossombase[bt] == t, "T-blossom entered at its base");
        if (bt >= n) augment_blossom(bt, j);
        mate[j] = labelend[bt];
        p = labelend[bt] ^ 1;
      }
    }
  }

  void run() {
    for (int stage = 0; stage < n; ++stage) {
      std::fill(label.begin(), label.end(), 0);
      std::fill(bestedge.begin(), bestedge.end(), -1);
      for (int b = n; b < 2 * n; ++b) {
        blossombestedges[b].clear();
        has_best_list[b] = 0;
      }
      std::fill(allowedge.begin(), allowedge.end(), 0);
      queue.clear();
      for (int v = 0; v < n; ++v)
        if (mate[v] == -1 && label[inblossom[v]] == 0) assign_label(v, 1, -1);

      bool augmented = false;
      for (;;) {
        while (!queue.empty() && !augmented) {
          int v = queue.back();
          queue.pop_back();
          check(label[inblossom[v]] == 1, "queue holds S-vertices");
          for (int p : neighbend[v]) {
            int k = p / 2;
            int w = endpoint[p];
            if (inblossom[v] == inblossom[w]) continue;
            long long kslack = 0;
            if (!allowedge[k]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge[k] = 1;
            }
            if (allowedge[k]) {
              if (label[inblossom[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label[inblossom[w]] == 1) {
                int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label[w] == 0) {
                check(label[inblossom[w]] == 2, "vertex inside a T-blossom");
                label[w] = 2;
                labelend[w] = p ^ 1;
              }
            } else if (label[inblossom[w]] == 1) {
              int b = inblossom[v];
              if (bestedge[b] == -1 || kslack < slack(bestedge[b]))
                bestedge[b] = k;
            } else if (label[w] == 0) {
              if (bestedge[w] == -1 || kslack < slack(bestedge[w]))
                bestedge[w] = k;
            }
          }
        }
        if (augmented) break;

        // Choose the largest dual change that keeps every constraint.
        int deltatype = 1;
        long long delta = 0;
        int deltaedge = -1;
        int deltablossom = -1;
        for (int v = 0; v < n; ++v)
          if (v == 0 || dualvar[v] < delta) delta = dualvar[v];
        for (int v = 0; v < n; ++v) {
          if (label[inblossom[v]] == 0 && bestedge[v] != -1) {
            long long d = slack(bestedge[v]);
            if (d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge[v];
            }
          }
        }
        for (int b = 0; b < 2 * n; ++b) {
          if (blossomparent[b] == -1 && label[b] == 1 && bestedge[b] != -1) {
            long long kslack = slack(bestedge[b]);
            check(kslack % 2 == 0, "S-to-S slack is even");
            long long d = kslack / 2;
            if (d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge[b];
            }
          }
        }
        for (int b = n; b < 2 * n; ++b) {
          if (blossombase[b] >= 0 && blossomparent[b] == -1 &&
              label[b] == 2 && dualvar[b] < delta) {
            delta = dualvar[b];
            deltatype = 4;
            deltablossom = b;
          }
        }

        for (int v = 0; v < n; ++v) {
          if (label[inblossom[v]] == 1)
            dualvar[v] -= delta;
          else if (label[inblossom[v]] == 2)
            dualvar[v] += delta;
        }
        for (int b = n; b < 2 * n; ++b) {
          if (blossombase[b] >= 0 && blossomparent[b] == -1) {
            if (label[b] == 1)
              dualvar[b] += delta;
            else if (label[b] == 2)
              dualvar[b] -= delta;
          }
        }

        if (deltatype == 1) {
          break;
        } else if (deltatype == 2) {
          allowedge[deltaedge] = 1;
          int i = edges[deltaedge].u;
          if (label[inblossom[i]] == 0) i = edges[deltaedge].v;
          check(label[inblossom[i]] == 1, "tight edge reaches the tree");
          queue.push_back(i);
        } else if (deltatype == 3) {
          allowedge[deltaedge] = 1;
          check(label[inblossom[edges[deltaedge].u]] == 1,
                "tight edge joins two S-blossoms");
          queue.push_back(edges[deltaedge].u);
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;

      for (int b = n; b < 2 * n; ++b) {
        if (blossomparent[b] == -1 && blossombase[b] >= 0 && label[b] == 1 &&
            dualvar[b] == 0)
          expand_blossom(b, true);
      }
    }
  }

  // Complementary slackness of the final primal/dual pair; this certifies
  // that the matching has maximum weight.
  void verify() const {
    for (int v = 0; v < n; ++v)
      check(dualvar[v] >= 0, "vertex duals stay non-negative");
    for (int b = n; b < 2 * n; ++b)
      check(blossombase[b] < 0 || dualvar[b] >= 0,
            "blossom duals stay non-negative");
    for (int k = 0; k < m; ++k) {
      long long s = slack(k);
      std::vector<int> ichain{edges[k].u};
      std::vector<int> jchain{edges[k].v};
      while (blossomparent[ichain.back()] != -1)
        ichain.push_back(blossomparent[ichain.back()]);
      while (blossomparent[jchain.back()] != -1)
        jchain.push_back(blossomparent[jchain.back()]);
      std::reverse(ichain.begin(), ichain.end());
      std::reverse(jchain.begin(), jchain.end());
      for (std::size_t t = 0; t < std::min(ichain.size(), jchain.size());
           ++t) {
        if (ichain[t] != jchain[t]) break;
        s += 2 * dualvar[ichain[t]];
      }
      check(s >= 0, "no edge is over-tight");
      bool mu = mate[edges[k].u] >= 0 && mate[edges[k].u] / 2 == k;
      bool mv = mate[edges[k].v] >= 0 && mate[edges[k].v] / 2 == k;
      if (mu || mv) {
        check(mu && mv, "matched edge is consistent on both sides");
        check(s == 0, "matched edges are tight");
      }
    }
    for (int v = 0; v < n; ++v)
      check(mate[v] >= 0 || dualvar[v] == 0,
            "single vertices carry zero dual");
    for (int b = n; b < 2 * n; ++b) {
      if (blossombase[b] >= 0 && dualvar[b] > 0) {
        check(blossomendps[b].size() % 2 == 1, "paid blossom is odd");
        int idx = 0;
        for (int p : blossomendps[b]) {
          if (idx++ % 2 == 0) continue;
          check(mate[endpoint[p]] == (p ^ 1), "paid blossom is fully matched");
          check(mate[endpoint[p ^ 1]] == p, "paid blossom is fully matched");
        }
      }
    }
  }
};

}  // namespace

BlossomResult max_weight_matching(int vertex_count,
                                  const std::vector<UnitEdge>& edges) {
  for (const UnitEdge& e : edges) {
    if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count ||
        e.u == e.v)
      throw InvalidInstance("max_weight_matching: bad edge endpoints");
  }
  BlossomResult out;
  out.mate.assign(vertex_count, -1);
  out.matched.assign(edges.size(), 0);
  if (vertex_count == 0 || edges.empty()) return out;

  Matcher mm(vertex_count, edges);
  mm.run();
  mm.verify();

  for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
    if (mm.mate[edges[k].u] == 2 * k + 1) {
      check(mm.mate[edges[k].v] == 2 * k, "mate arrays agree");
      out.matched[k] = 1;
      out.value += edges[k].weight;
    }
  }
  for (int v = 0; v < vertex_count; ++v)
    if (mm.mate[v] >= 0) out.mate[v] = mm.endpoint[mm.mate[v]];
  return out;
}

}  // namespace capstab
