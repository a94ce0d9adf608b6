#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <string>

#include "doctest.h"
#include "families.hpp"
#include "graph.hpp"
#include "instance_io.hpp"
#include "rational.hpp"
#include "support.hpp"

using namespace capstab;
using namespace capstab::testing;

TEST_CASE("instance text parses into the declared graph") {
  CapGraph g = parse_instance(
      "# a triangle\n"
      "graph 3 3\n"
      "vertex a 1\n"
      "vertex b 2\n"
      "vertex c 1\n"
      "edge a b 1\n"
      "edge b c 1/2\n"
      "edge a c 3\n");
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.capacity(1) == 2);
  CHECK(g.edge(1).weight == Rational(1, 2));
  CHECK(g.vertex_name(2) == "c");
}

TEST_CASE("parse errors carry line numbers") {
  auto expect_line = [](const std::string& text, int line) {
    try {
      parse_instance(text);
      FAIL_CHECK("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("graph 2 1\nvertex a 1\nvertex b 1\nedge a b -1\n", 4);
  expect_line("graph 2 1\nvertex a 1\nvertex b 1\nedge a a 1\n", 4);
  expect_line("graph 2 1\nvertex a 1\nvertex b -2\nedge a b 1\n", 3);
  // a short body is only detectable at end of input
  expect_line("graph 2 2\nvertex a 1\nvertex b 1\nedge a b 1\n", 5);
  expect_line("bogus\n", 1);

  // duplicate edge names both offending lines
  try {
    parse_instance(
        "graph 2 2\nvertex a 1\nvertex b 1\nedge a b 1\nedge b a 2\n");
    FAIL_CHECK("expected a parse error");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(e.line() == 5);
    CHECK(msg.find("line 4") != std::string::npos);
  }
}

TEST_CASE("serialize and parse round-trip byte-exactly") {
  const Suite& suite = shared_suite();
  for (std::size_t i = 0; i < suite.weighted.size(); i += 97) {
    std::string text = serialize_instance(suite.weighted[i]);
    CHECK(serialize_instance(parse_instance(text)) == text);
  }
  for (const char* fam : {"fig1", "fig2", "fig2x", "fig3", "fig4"}) {
    std::string text = serialize_instance(generate_family(fam, {}, 0));
    CHECK(serialize_instance(parse_instance(text)) == text);
  }
}

TEST_CASE("digest separates instances and survives round-trips") {
  CapGraph g1 = make_fig3();
  CapGraph g2 = make_fig4();
  CHECK(instance_digest(g1) == instance_digest(g1));
  CHECK(instance_digest(g1) != instance_digest(g2));
  CHECK(instance_digest(parse_instance(serialize_instance(g1))) ==
        instance_digest(g1));
  CHECK(instance_digest(g1).rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("rational text helpers parse and print exactly") {
  CHECK(parse_rational("3/4").value() == Rational(3, 4));
  CHECK(parse_rational("7").value() == Rational(7));
  CHECK_FALSE(parse_rational("3/").has_value());
  CHECK_FALSE(parse_rational("a").has_value());
  CHECK_FALSE(parse_rational("1/0").has_value());
  CHECK(rational_to_string(Rational(25, 2)) == "25/2");
  CHECK(rational_to_string(Rational(4)) == "4");
  CHECK(is_integral(Rational(4)));
  CHECK_FALSE(is_integral(Rational(1, 2)));
}

TEST_CASE("hub family reproduces its size and weight pattern") {
  CapGraph g = make_fig1(3, Rational(1, 4));
  CHECK(g.vertex_count() == 10);
  CHECK(g.edge_count() == 12);
  for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(g.capacity(v) == 1);
  // pendant edge carries the epsilon weight
  CHECK(g.edge(0).weight == Rational(1, 4));
  // each triangle contributes weights 2, 1, 2
  CHECK(g.edge(3).weight == Rational(2));
  CHECK(g.edge(4).weight == Rational(1));
  CHECK(g.edge(5).weight == Rational(2));

  CHECK(make_fig1(5, Rational(1, 4)).edge_count() == 18);
  CHECK_THROWS_AS(make_fig1(2, Rational(1, 4)), InvalidInstance);
  CHECK_THROWS_AS(make_fig1(3, Rational(1, 2)), InvalidInstance);
  CHECK_THROWS_AS(make_fig1(3, Rational(0)), InvalidInstance);
}

TEST_CASE("fixed families have the pinned shapes") {
  CapGraph f2 = make_fig2();
  CHECK(f2.vertex_count() == 9);
  int cap2 = 0;
  for (VertexId v = 0; v < f2.vertex_count(); ++v)
    if (f2.capacity(v) == 2) ++cap2;
  CHECK(cap2 == 3);
  for (EdgeId e = 0; e < f2.edge_count(); ++e)
    CHECK(f2.edge(e).weight == Rational(1));

  CapGraph f3 = make_fig3();
  CHECK(f3.vertex_count() == 6);
  CHECK(f3.edge_count() == 6);
  CHECK(f3.capacity(1) == 2);  // the one capacity-2 vertex
  std::vector<long long> w;
  for (EdgeId e = 0; e < f3.edge_count(); ++e)
    w.push_back(static_cast<long long>(f3.edge(e).weight.convert_to<long long>()));
  CHECK(w == std::vector<long long>{5, 5, 2, 1, 2, 5});

  CapGraph f4 = make_fig4();
  CHECK(f4.vertex_count() == 6);
  CHECK(f4.edge_count() == 7);
  CHECK(f4.capacity(2) == 2);
  for (EdgeId e = 0; e < f4.edge_count(); ++e)
    CHECK(f4.edge(e).weight == Rational(1));
}

TEST_CASE("plain families and the seeded family behave") {
  CapGraph c5 = make_odd_cycle(5);
  CHECK(c5.vertex_count() == 5);
  CHECK(c5.edge_count() == 5);
  for (VertexId v = 0; v < 5; ++v) CHECK(c5.capacity(v) == 1);
  CHECK_THROWS_AS(make_odd_cycle(4), InvalidInstance);
  CHECK_THROWS_AS(make_odd_cycle(1), InvalidInstance);

  CHECK(make_path(4).edge_count() == 3);
  CHECK(make_complete(4).edge_count() == 6);

  CapGraph r1 = make_random(6, 9, 2, 3, 42);
  CapGraph r2 = make_random(6, 9, 2, 3, 42);
  CHECK(serialize_instance(r1) == serialize_instance(r2));
  CapGraph r3 = make_random(6, 9, 2, 3, 43);
  CHECK(serialize_instance(r1) != serialize_instance(r3));
  CHECK(r1.edge_count() == 9);
}

TEST_CASE("family dispatch parses parameters and rejects junk") {
  std::map<std::string, std::string> params;
  params["k"] = "4";
  params["eps"] = "1/3";
  CapGraph g = generate_family("fig1", params, 0);
  CHECK(g.edge_count() == 15);
  CHECK(g.edge(0).weight == Rational(1, 3));

  CHECK_THROWS_AS(generate_family("nope", {}, 0), InvalidInstance);
  CHECK_THROWS_AS(generate_family("fig1", {{"k", "x"}}, 0), InvalidInstance);
  CHECK_THROWS_AS(generate_family("odd_cycle", {{"k", "4"}}, 0),
                  InvalidInstance);

  // the seed only matters for the random family
  CHECK(serialize_instance(generate_family("fig3", {}, 1)) ==
        serialize_instance(generate_family("fig3", {}, 2)));
  CHECK(serialize_instance(generate_family("random", {}, 1)) !=
        serialize_instance(generate_family("random", {}, 2)));
}
