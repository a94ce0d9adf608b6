#ifndef CAPSTAB_H
#define CAPSTAB_H

// C surface of the capstab library. Everything behind this header is C++;
// callers see only opaque handles, status codes and strings. All strings
// returned through char** out-parameters are heap copies owned by the
// caller and released with capstab_string_free. Strings returned as plain
// const char* borrow from the handle they came from and stay valid until
// that handle is freed.
//
// Oracle-backed entry points enumerate exhaustively and refuse instances
// above a built-in edge-count bound with CAPSTAB_ERR_SCALE. Setting the
// environment variable CAPSTAB_ORACLE_MAX_EDGES to a positive integer
// replaces that bound for every oracle-backed call in this header.

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum capstab_status {
  CAPSTAB_OK = 0,
  // Malformed instance or certificate text.
  CAPSTAB_ERR_PARSE = 1,
  // Structurally invalid input: bad capacities, weights, family parameters,
  // or a stabilizer that does not match the instance.
  CAPSTAB_ERR_INVALID = 2,
  // Instance exceeds an exhaustive-enumeration size bound.
  CAPSTAB_ERR_SCALE = 3,
  // Certificate does not verify against the instance.
  CAPSTAB_ERR_VERIFY = 4,
  // Internal invariant failure; indicates a library bug.
  CAPSTAB_ERR_INTERNAL = 5
} capstab_status;

// Short stable name for a status code ("ok", "parse", "invalid", "scale",
// "verify", "internal"). Never returns NULL.
const char* capstab_status_name(capstab_status status);

// Library version string, e.g. "1.0.0".
const char* capstab_version(void);

// Releases a string obtained through any char** out-parameter below.
// NULL is a no-op.
void capstab_string_free(char* s);

// Opaque instance handle: a graph with integer vertex capacities and
// non-negative rational edge weights.
typedef struct capstab_graph capstab_graph;

// Opaque result set: an ordered list of key/value string pairs. Each
// operation documents its keys; order is fixed so output diffs are stable.
typedef struct capstab_result capstab_result;

// ---- instances -----------------------------------------------------------

// Parses instance text ("graph n m" header, "vertex id cap" and
// "edge u v w" lines, '#' comments). On success stores a new handle in
// *out. On failure stores a line-attributed message in *err when err is
// non-NULL and leaves *out untouched.
capstab_status capstab_parse(const char* text, capstab_graph** out,
                             char** err);

// Builds a named generator family. params is a comma-separated list of
// key=value assignments ("k=3,eps=1/4"); NULL or "" means all defaults.
// Families: fig1, fig2, fig2x, fig3, fig4, odd_cycle, path, complete,
// random. Only the random family consumes the seed.
capstab_status capstab_generate(const char* family, const char* params,
                                uint64_t seed, capstab_graph** out,
                                char** err);

// Serializes the instance back to its text format. Round-trips through
// capstab_parse byte-exactly.
capstab_status capstab_serialize(const capstab_graph* g, char** out);

size_t capstab_vertex_count(const capstab_graph* g);
size_t capstab_edge_count(const capstab_graph* g);

void capstab_graph_free(capstab_graph* g);

// ---- results -------------------------------------------------------------

size_t capstab_result_count(const capstab_result* r);
// i-th key / value; NULL when i is out of range.
const char* capstab_result_key(const capstab_result* r, size_t i);
const char* capstab_result_value(const capstab_result* r, size_t i);
// Value for a key, NULL when absent.
const char* capstab_result_get(const capstab_result* r, const char* key);
void capstab_result_free(capstab_result* r);

// ---- analyses ------------------------------------------------------------

// Decides stability: whether the maximum c-matching weight equals the
// fractional optimum. Result keys, in order:
//   verdict           "stable" or "unstable"
//   matching_value    maximum c-matching weight (rational)
//   fractional_value  fractional optimum (rational)
//   matching          space-separated edge ids of an optimal c-matching
//   certificate       re-verifiable certificate document
capstab_status capstab_check(const capstab_graph* g, capstab_result** out,
                             char** err);

// Minimum fractional odd-cycle count over maximum-weight basic solutions.
// With exact nonzero the count is confirmed against exhaustive enumeration
// (subject to the size bound); otherwise a descent heuristic reports an
// upper bound, certified only when it reaches zero. Result keys:
//   mode       "exact" or "heuristic"
//   gamma      cycle count (exact value, or certified/uncertified bound)
//   certified  "true" or "false"
capstab_status capstab_gamma(const capstab_graph* g, int exact,
                             capstab_result** out, char** err);

// Computes a stabilizer: mode "capacity" reduces vertex capacities by one
// on a minimum multiset of vertices; mode "edge" removes an edge set of
// size at most max-degree times the cycle count. With exact nonzero the
// underlying cycle minimization is enumeration-confirmed. Result keys:
//   kind           "capacity" or "edge"
//   size           number of reductions / removed edges
//   lower_bound    certified lower bound on any stabilizer of that kind
//   solution       space-separated vertex ids or edge ids
//   weight_before  maximum c-matching weight of the input
//   weight_after   maximum c-matching weight of the stabilized instance
//   stabilized     stabilized instance in text format
//   certificate    re-verifiable certificate document
capstab_status capstab_stabilize(const capstab_graph* g, const char* mode,
                                 int exact, capstab_result** out,
                                 char** err);

// Runs one exhaustive ground-truth routine. which selects it:
//   matching    keys: value, edges
//   fractional  keys: value
//   stable      keys: stable
//   basic       keys: value, count, min_cycles
//   capacity    keys: size, vertices   (minimum capacity stabilizer)
//   edge        keys: size, edges      (minimum edge stabilizer)
//   edge-wp     keys: size, edges      (minimum weight-preserving one)
//   polytope    keys: vertices, adjacent_pairs
capstab_status capstab_oracle(const capstab_graph* g, const char* which,
                              capstab_result** out, char** err);

// Re-verifies a certificate document against an instance with arithmetic
// only; no optimizer runs. Returns CAPSTAB_OK when the document proves its
// claims for this instance, CAPSTAB_ERR_PARSE on malformed text, and
// CAPSTAB_ERR_VERIFY with a reason in *why otherwise.
capstab_status capstab_verify(const char* certificate,
                              const capstab_graph* g, char** why);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // CAPSTAB_H
