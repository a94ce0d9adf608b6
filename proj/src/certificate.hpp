#pragma once

#include <string>
#include <vector>

#include "graph.hpp"
#include "halfvec.hpp"
#include "stabilize.hpp"

namespace capstab {

// Offline-checkable record of a stability verdict or a stabilization run.
// The matching, fractional point and dual always refer to the target graph,
// which is the instance itself for plain checks and the stabilized graph
// when a stabilizer is present. Everything a verifier needs is contained in
// the document plus the instance file; re-checking is plain arithmetic.
struct CertificateDocument {
  std::string instance;  // digest line of the instance, "fnv1a64:<16 hex>"
  bool stable = false;   // verdict for the input instance
  bool has_stabilizer = false;
  StabKind kind = StabKind::kCapacity;
  std::vector<int> solution;
  int lower_bound = 0;
  Rational weight_before;  // maximum matching weight of the instance
  Rational weight_after;   // same for the target graph
  std::vector<EdgeId> matching;          // target edge ids, ascending
  Rational fractional_value;             // relaxation optimum of the target
  std::vector<std::uint8_t> x_halves;    // basic optimum of the target
  std::vector<Rational> dual_y;
  std::vector<Rational> dual_z;
  std::vector<std::string> slackness;    // transcript of the active clauses

  bool operator==(const CertificateDocument& other) const = default;
};

// Document for a plain stability check of g.
CertificateDocument emit_certificate(const CapGraph& g,
                                     const StabilityCheck& chk);

// Document for a stabilization run on g.
CertificateDocument emit_certificate(const CapGraph& g,
                                     const StabReport& report);

// Canonical text form: fixed line order, single spaces, trailing newline.
// parse_certificate(serialize_certificate(d)) == d.
std::string serialize_certificate(const CertificateDocument& doc);

// Throws ParseError (with line number) on malformed text. Blank lines and
// lines starting with '#' are ignored outside the slackness block.
CertificateDocument parse_certificate(const std::string& text);

// Re-checks the document against the instance by arithmetic only: digest,
// stabilizer application, matching feasibility and weight, basicness and
// weight of the fractional point, dual feasibility, objective equality,
// complementary slackness, verdict consistency and the transcript itself.
// No optimizer runs. Returns false with a pinpointed reason in *why.
bool verify_certificate(const CertificateDocument& doc, const CapGraph& g,
                        std::string* why = nullptr);

}  // namespace capstab
