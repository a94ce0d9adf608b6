// Implementation of the C surface in include/capstab.h. Translates between
// C++ objects/exceptions and opaque handles/status codes; no algorithmic
// logic lives here.
#include "capstab.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "certificate.hpp"
#include "families.hpp"
#include "gamma.hpp"
#include "graph.hpp"
#include "instance_io.hpp"
#include "oracle.hpp"
#include "rational.hpp"
#include "stabilize.hpp"

struct capstab_graph {
  capstab::CapGraph g;
};

struct capstab_result {
  std::vector<std::pair<std::string, std::string>> kv;

  void put(std::string key, std::string value) {
    kv.emplace_back(std::move(key), std::move(value));
  }
};

namespace {

using namespace capstab;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** err, const std::string& msg) {
  if (err != nullptr) *err = dup_string(msg);
}

// Runs fn, mapping the library's exception types onto status codes and the
// message onto *err. fn performs all its own output assignment.
template <typename Fn>
capstab_status guarded(char** err, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    set_err(err, e.what());
    return CAPSTAB_ERR_PARSE;
  } catch (const ScaleError& e) {
    set_err(err, e.what());
    return CAPSTAB_ERR_SCALE;
  } catch (const InvalidInstance& e) {
    set_err(err, e.what());
    return CAPSTAB_ERR_INVALID;
  } catch (const std::exception& e) {
    set_err(err, e.what());
    return CAPSTAB_ERR_INTERNAL;
  }
}

// Oracle size bound: the given default, unless the environment variable
// CAPSTAB_ORACLE_MAX_EDGES holds a positive integer.
int oracle_bound(int fallback) {
  const char* raw = std::getenv("CAPSTAB_ORACLE_MAX_EDGES");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value <= 0) return fallback;
  return static_cast<int>(value);
}

std::string join_ids(const std::vector<int>& ids) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out << ' ';
    out << ids[i];
  }
  return out.str();
}

// Splits "k=3,eps=1/4" into a parameter map. Throws InvalidInstance on a
// piece without '='.
std::map<std::string, std::string> parse_params(const char* params) {
  std::map<std::string, std::string> out;
  if (params == nullptr) return out;
  std::string text(params);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string piece = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (piece.empty()) continue;
    std::size_t eq = piece.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InvalidInstance("family parameter must be key=value: " + piece);
    }
    out[piece.substr(0, eq)] = piece.substr(eq + 1);
  }
  return out;
}

}  // namespace

extern "C" {

const char* capstab_status_name(capstab_status status) {
  switch (status) {
    case CAPSTAB_OK:
      return "ok";
    case CAPSTAB_ERR_PARSE:
      return "parse";
    case CAPSTAB_ERR_INVALID:
      return "invalid";
    case CAPSTAB_ERR_SCALE:
      return "scale";
    case CAPSTAB_ERR_VERIFY:
      return "verify";
    case CAPSTAB_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* capstab_version(void) { return "1.0.0"; }

void capstab_string_free(char* s) { std::free(s); }

capstab_status capstab_parse(const char* text, capstab_graph** out,
                             char** err) {
  if (text == nullptr || out == nullptr) {
    set_err(err, "capstab_parse: text and out must be non-NULL");
    return CAPSTAB_ERR_INVALID;
  }
  return guarded(err, [&] {
    auto* handle = new capstab_graph{parse_instance(text)};
    *out = handle;
    return CAPSTAB_OK;
  });
}

capstab_status capstab_generate(const char* family, const char* params,
                                uint64_t seed, capstab_graph** out,
                                char** err) {
  if (family == nullptr || out == nullptr) {
    set_err(err, "capstab_generate: family and out must be non-NULL");
    return CAPSTAB_ERR_INVALID;
  }
  return guarded(err, [&] {
    auto* handle =
        new capstab_graph{generate_family(family, parse_params(params), seed)};
    *out = handle;
    return CAPSTAB_OK;
  });
}

capstab_status capstab_serialize(const capstab_graph* g, char** out) {
  if (g == nullptr || out == nullptr) return CAPSTAB_ERR_INVALID;
  *out = dup_string(serialize_instance(g->g));
  return *out != nullptr ? CAPSTAB_OK : CAPSTAB_ERR_INTERNAL;
}

size_t capstab_vertex_count(const capstab_graph* g) {
  return g == nullptr ? 0 : static_cast<size_t>(g->g.vertex_count());
}

size_t capstab_edge_count(const capstab_graph* g) {
  return g == nullptr ? 0 : static_cast<size_t>(g->g.edge_count());
}

void capstab_graph_free(capstab_graph* g) { delete g; }

size_t capstab_result_count(const capstab_result* r) {
  return r == nullptr ? 0 : r->kv.size();
}

const char* capstab_result_key(const capstab_result* r, size_t i) {
  if (r == nullptr || i >= r->kv.size()) return nullptr;
  return r->kv[i].first.c_str();
}

const char* capstab_result_value(const capstab_result* r, size_t i) {
  if (r == nullptr || i >= r->kv.size()) return nullptr;
  return r->kv[i].second.c_str();
}

const char* capstab_result_get(const capstab_result* r, const char* key) {
  if (r == nullptr || key == nullptr) return nullptr;
  for (const auto& [k, v] : r->kv) {
    if (k == key) return v.c_str();
  }
  return nullptr;
}

void capstab_result_free(capstab_result* r) { delete r; }

capstab_status capstab_check(const capstab_graph* g, capstab_result** out,
                             char** err) {
  if (g == nullptr || out == nullptr) {
    set_err(err, "capstab_check: g and out must be non-NULL");
    return CAPSTAB_ERR_INVALID;
  }
  return guarded(err, [&] {
    StabilityCheck chk = is_stable(g->g);
    auto r = std::make_unique<capstab_result>();
    r->put("verdict", chk.stable ? "stable" : "unstable");
    r->put("matching_value", rational_to_string(chk.matching_value));
    r->put("fractional_value", rational_to_string(chk.fractional_value));
    r->put("matching", join_ids(chk.matching.edges()));
    r->put("certificate",
           serialize_certificate(emit_certificate(g->g, chk)));
    *out = r.release();
    return CAPSTAB_OK;
  });
}

capstab_status capstab_gamma(const capstab_graph* g, int exact,
                             capstab_result** out, char** err) {
  if (g == nullptr || out == nullptr) {
    set_err(err, "capstab_gamma: g and out must be non-NULL");
    return CAPSTAB_ERR_INVALID;
  }
  return guarded(err, [&] {
    GammaMode mode = exact != 0 ? GammaMode::kExact : GammaMode::kHeuristic;
    MinCycleResult mc =
        min_cycle_optimum(g->g, mode, oracle_bound(kBruteBasicEdgeBound));
    auto r = std::make_unique<capstab_result>();
    r->put("mode", exact != 0 ? "exact" : "heuristic");
    r->put("gamma", std::to_string(mc.cycle_count));
    r->put("certified", mc.certified ? "true" : "false");
    *out = r.release();
    return CAPSTAB_OK;
  });
}

capstab_status capstab_stabilize(const capstab_graph* g, const char* mode,
                                 int exact, capstab_result** out,
                                 char** err) {
  if (g == nullptr || mode == nullptr || out == nullptr) {
    set_err(err, "capstab_stabilize: g, mode and out must be non-NULL");
    return CAPSTAB_ERR_INVALID;
  }
  std::string kind(mode);
  if (kind != "capacity" && kind != "edge") {
    set_err(err, "mode must be capacity or edge, got: " + kind);
    return CAPSTAB_ERR_INVALID;
  }
  return guarded(err, [&] {
    GammaMode gm = exact != 0 ? GammaMode::kExact : GammaMode::kHeuristic;
    int bound = oracle_bound(kBruteBasicEdgeBound);
    StabReport report = kind == "capacity"
                            ? capacity_stabilizer(g->g, gm, bound)
                            : edge_stabilizer_approx(g->g, gm, bound);
    auto r = std::make_unique<capstab_result>();
    r->put("kind", kind);
    r->put("size", std::to_string(report.size));
    r->put("lower_bound", std::to_string(report.lower_bound));
    r->put("solution", join_ids(report.solution));
    r->put("weight_before", rational_to_string(report.weight_before));
    r->put("weight_after", rational_to_string(report.weight_after));
    r->put("stabilized", serialize_instance(report.stabilized));
    r->put("certificate",
           serialize_certificate(emit_certificate(g->g, report)));
    *out = r.release();
    return CAPSTAB_OK;
  });
}

capstab_status capstab_oracle(const capstab_graph* g, const char* which,
                              capstab_result** out, char** err) {
  if (g == nullptr || which == nullptr || out == nullptr) {
    set_err(err, "capstab_oracle: g, which and out must be non-NULL");
    return CAPSTAB_ERR_INVALID;
  }
  std::string op(which);
  return guarded(err, [&] {
    auto r = std::make_unique<capstab_result>();
    if (op == "matching") {
      BruteMatchingResult bm =
          brute_max_c_matching(g->g, oracle_bound(kBruteMatchingEdgeBound));
      r->put("value", rational_to_string(bm.value));
      r->put("edges", join_ids(bm.matching.edges()));
    } else if (op == "fractional") {
      Rational v =
          brute_fractional_value(g->g, oracle_bound(kBruteFractionalEdgeBound));
      r->put("value", rational_to_string(v));
    } else if (op == "stable") {
      bool s = brute_is_stable(g->g, oracle_bound(kBruteFractionalEdgeBound));
      r->put("stable", s ? "true" : "false");
    } else if (op == "basic") {
      BasicOptima bo =
          brute_basic_optima(g->g, oracle_bound(kBruteBasicEdgeBound));
      r->put("value", rational_to_string(bo.value));
      r->put("count", std::to_string(bo.optima.size()));
      r->put("min_cycles", std::to_string(bo.min_cycles));
    } else if (op == "capacity") {
      CapacityStabilizerWitness w = brute_min_capacity_stabilizer(
          g->g, oracle_bound(kBruteFractionalEdgeBound));
      r->put("size", std::to_string(w.size));
      r->put("vertices", join_ids(w.vertices));
    } else if (op == "edge" || op == "edge-wp") {
      EdgeStabilizerWitness w = brute_min_edge_stabilizer(
          g->g, op == "edge-wp", oracle_bound(kBruteFractionalEdgeBound));
      r->put("size", std::to_string(w.size));
      r->put("edges", join_ids(w.edges));
    } else if (op == "polytope") {
      PolytopeVertexGraph pv = enumerate_polytope_vertices(
          g->g, oracle_bound(kBrutePolytopeEdgeBound));
      r->put("vertices", std::to_string(pv.vertices.size()));
      r->put("adjacent_pairs", std::to_string(pv.adjacency.size()));
    } else {
      throw InvalidInstance(
          "unknown oracle (expected matching, fractional, stable, basic, "
          "capacity, edge, edge-wp or polytope): " +
          op);
    }
    *out = r.release();
    return CAPSTAB_OK;
  });
}

capstab_status capstab_verify(const char* certificate,
                              const capstab_graph* g, char** why) {
  if (certificate == nullptr || g == nullptr) {
    set_err(why, "capstab_verify: certificate and g must be non-NULL");
    return CAPSTAB_ERR_INVALID;
  }
  return guarded(why, [&]() -> capstab_status {
    CertificateDocument doc = parse_certificate(certificate);
    std::string reason;
    if (verify_certificate(doc, g->g, &reason)) return CAPSTAB_OK;
    set_err(why, reason);
    return CAPSTAB_ERR_VERIFY;
  });
}

}  // extern "C"
