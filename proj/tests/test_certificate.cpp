#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "doctest.h"
#include "families.hpp"
#include "graph.hpp"
#include "instance_io.hpp"
#include "stabilize.hpp"
#include "support.hpp"

using namespace capstab;
using namespace capstab::testing;

namespace {

// A document must survive the text round trip unchanged and then verify
// against the graph it was emitted for.
void roundtrip_and_verify(const CapGraph& g, const CertificateDocument& doc) {
  std::string text = serialize_certificate(doc);
  CertificateDocument back = parse_certificate(text);
  CHECK(back == doc);
  std::string why;
  CHECK_MESSAGE(verify_certificate(back, g, &why), why);
  // serialization is canonical: one more cycle is byte identical
  CHECK(serialize_certificate(back) == text);
}

}  // namespace

TEST_CASE("check documents for both verdicts") {
  CapGraph tiny = CapGraph::build({"a", "b"}, {1, 1}, {{0, 1, Rational(5)}});
  CertificateDocument stable_doc = emit_certificate(tiny, is_stable(tiny));
  CHECK(stable_doc.stable);
  CHECK_FALSE(stable_doc.has_stabilizer);
  CHECK(stable_doc.instance == instance_digest(tiny));
  roundtrip_and_verify(tiny, stable_doc);

  CapGraph g = make_fig3();
  CertificateDocument doc = emit_certificate(g, is_stable(g));
  CHECK_FALSE(doc.stable);
  CHECK(doc.weight_after == 12);
  CHECK(doc.fractional_value == Rational(25, 2));
  roundtrip_and_verify(g, doc);
}

TEST_CASE("stabilization documents for both kinds") {
  CapGraph g = make_fig3();

  CertificateDocument cap = emit_certificate(g, capacity_stabilizer(g));
  CHECK(cap.has_stabilizer);
  CHECK_FALSE(cap.stable);
  CHECK(cap.kind == StabKind::kCapacity);
  CHECK(cap.solution == std::vector<int>{3});
  CHECK(cap.weight_before == 12);
  CHECK(cap.weight_after == 12);
  roundtrip_and_verify(g, cap);

  CertificateDocument edge_doc = emit_certificate(g, edge_stabilizer_approx(g));
  CHECK(edge_doc.kind == StabKind::kEdge);
  CHECK(edge_doc.solution == std::vector<int>{2, 3});
  roundtrip_and_verify(g, edge_doc);

  // a stable input keeps an empty solution but still documents the verdict
  CapGraph tiny = CapGraph::build({"a", "b"}, {1, 1}, {{0, 1, Rational(5)}});
  CertificateDocument none = emit_certificate(tiny, capacity_stabilizer(tiny));
  CHECK(none.has_stabilizer);
  CHECK(none.stable);
  CHECK(none.solution.empty());
  roundtrip_and_verify(tiny, none);
}

TEST_CASE("tampering is caught with a pinpointed reason") {
  CapGraph g = make_fig3();
  CertificateDocument doc = emit_certificate(g, is_stable(g));
  std::string why;

  CertificateDocument bad = doc;
  bad.dual_y[1] += 1;
  CHECK_FALSE(verify_certificate(bad, g, &why));
  CHECK(why.find("dual objective") != std::string::npos);

  bad = doc;
  bad.dual_y[1] -= Rational(1, 2);
  CHECK_FALSE(verify_certificate(bad, g, &why));
  CHECK(why.find("dual infeasible") != std::string::npos);

  bad = doc;
  bad.stable = !bad.stable;
  CHECK_FALSE(verify_certificate(bad, g, &why));

  bad = doc;
  bad.matching.clear();
  CHECK_FALSE(verify_certificate(bad, g, &why));

  bad = doc;
  REQUIRE(!bad.slackness.empty());
  bad.slackness.pop_back();
  CHECK_FALSE(verify_certificate(bad, g, &why));

  bad = doc;
  bad.x_halves[0] = (doc.x_halves[0] == 2) ? 0 : 2;
  CHECK_FALSE(verify_certificate(bad, g, &why));

  CHECK_FALSE(verify_certificate(doc, make_odd_cycle(3), &why));
  CHECK(why == "instance digest mismatch");
}

TEST_CASE("tampered stabilizer solutions fail verification") {
  CapGraph g = make_fig3();
  CertificateDocument doc = emit_certificate(g, edge_stabilizer_approx(g));
  std::string why;

  // claim a smaller solution than the certificate's own target graph
  CertificateDocument bad = doc;
  bad.solution.pop_back();
  CHECK_FALSE(verify_certificate(bad, g, &why));

  // claim a lower bound above the solution size
  bad = doc;
  bad.lower_bound = static_cast<int>(bad.solution.size()) + 1;
  CHECK_FALSE(verify_certificate(bad, g, &why));
  CHECK(why.find("lower bound") != std::string::npos);
}

TEST_CASE("parse errors carry the offending line") {
  try {
    parse_certificate("capstab-certificate v1\ninstance x\nverdict maybe\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_certificate(""), ParseError);
  CHECK_THROWS_AS(parse_certificate("bogus header\n"), ParseError);
}

TEST_CASE("every emitted document round trips and verifies") {
  for (unsigned seed = 0; seed < 120; ++seed) {
    int n = 2 + static_cast<int>(seed % 6);
    int m = std::min(static_cast<int>((seed * 7) % 11), n * (n - 1) / 2);
    CapGraph g = make_random(n, m, 2, 3, seed + 1300);
    roundtrip_and_verify(g, emit_certificate(g, is_stable(g)));
    roundtrip_and_verify(g, emit_certificate(g, capacity_stabilizer(g)));
    roundtrip_and_verify(g, emit_certificate(g, edge_stabilizer_approx(g)));
  }
}
