#include "certificate.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "instance_io.hpp"

namespace capstab {

namespace {

// Canonical transcript of the active slackness clauses of (x, dual): which
// edges must be covered tightly, which vertices must sit at capacity, which
// edges must be full. One line per clause, ids ascending within each kind.
std::vector<std::string> build_transcript(const CapGraph& g,
                                          const HalfVector& x,
                                          const DualCover& dual) {
  std::vector<std::string> lines;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (x.halves(e) == 0) continue;
    Rational cover = dual.y[g.edge(e).u] + dual.y[g.edge(e).v] + dual.z[e];
    lines.push_back("tight " + std::to_string(e) + " " +
                    rational_to_string(g.edge(e).weight) + " " +
                    rational_to_string(cover));
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (dual.y[v] == 0) continue;
    lines.push_back("saturated " + std::to_string(v) + " " +
                    rational_to_string(Rational(x.degree_halves(g, v), 2)) +
                    " " + std::to_string(g.capacity(v)));
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (dual.z[e] == 0) continue;
    lines.push_back("full " + std::to_string(e));
  }
  return lines;
}

CertificateDocument base_document(const CapGraph& g, const CapGraph& target,
                                  const CMatching& matching,
                                  const HalfVector& x, const DualCover& dual) {
  CertificateDocument doc;
  doc.instance = instance_digest(g);
  doc.matching = matching.edges();
  doc.fractional_value = x.weight(target);
  doc.x_halves.resize(x.size());
  for (EdgeId e = 0; e < static_cast<int>(x.size()); ++e)
    doc.x_halves[e] = x.halves(e);
  doc.dual_y = dual.y;
  doc.dual_z = dual.z;
  doc.slackness = build_transcript(target, x, dual);
  return doc;
}

void put_count_line(std::ostringstream& out, const std::string& key,
                    const std::vector<int>& items) {
  out << key << ' ' << items.size();
  for (int v : items) out << ' ' << v;
  out << '\n';
}

std::vector<std::string> logical_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

struct Cursor {
  const std::vector<std::string>& lines;
  std::size_t pos = 0;
  bool raw = false;  // inside the slackness block: no comment skipping

  // Next meaningful line, with its 1-based number for error messages.
  std::pair<std::string, int> next(const char* expected) {
    while (pos < lines.size()) {
      std::string line = lines[pos++];
      if (!raw) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto last = line.find_last_not_of(" \t\r");
        line.resize(last == std::string::npos ? 0 : last + 1);
        if (line.empty()) continue;
      }
      return {line, static_cast<int>(pos)};
    }
    throw ParseError(static_cast<int>(lines.size()),
                     std::string("missing ") + expected + " line");
  }
};

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

[[noreturn]] void bad(int line, const std::string& msg) {
  throw ParseError(line, msg);
}

long long parse_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) bad(line, "bad integer '" + tok + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    bad(line, "bad integer '" + tok + "'");
  }
}

Rational parse_rat(const std::string& tok, int line) {
  auto r = parse_rational(tok);
  if (!r) bad(line, "bad rational '" + tok + "'");
  return *r;
}

// Shared tail of verification failures.
bool refuse(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

CertificateDocument emit_certificate(const CapGraph& g,
                                     const StabilityCheck& chk) {
  CertificateDocument doc =
      base_document(g, g, chk.matching, chk.fractional, chk.dual);
  doc.stable = chk.stable;
  doc.has_stabilizer = false;
  doc.weight_before = chk.matching_value;
  doc.weight_after = chk.matching_value;
  return doc;
}

CertificateDocument emit_certificate(const CapGraph& g,
                                     const StabReport& report) {
  CertificateDocument doc =
      base_document(g, report.stabilized, report.matching,
                    HalfVector::from_matching(report.matching), report.dual);
  doc.stable = report.solution.empty();
  doc.has_stabilizer = true;
  doc.kind = report.kind;
  doc.solution = report.solution;
  doc.lower_bound = report.lower_bound;
  doc.weight_before = report.weight_before;
  doc.weight_after = report.weight_after;
  return doc;
}

std::string serialize_certificate(const CertificateDocument& doc) {
  std::ostringstream out;
  out << "capstab-certificate v1\n";
  out << "instance " << doc.instance << '\n';
  out << "verdict " << (doc.stable ? "stable" : "unstable") << '\n';
  if (!doc.has_stabilizer) {
    out << "stabilizer none\n";
  } else {
    put_count_line(out,
                   doc.kind == StabKind::kCapacity ? "stabilizer capacity"
                                                   : "stabilizer edge",
                   doc.solution);
    out << "lower_bound " << doc.lower_bound << '\n';
  }
  out << "weight_before " << rational_to_string(doc.weight_before) << '\n';
  out << "weight_after " << rational_to_string(doc.weight_after) << '\n';
  put_count_line(out, "matching",
                 std::vector<int>(doc.matching.begin(), doc.matching.end()));
  out << "fractional_value " << rational_to_string(doc.fractional_value)
      << '\n';
  out << "x " << doc.x_halves.size();
  for (std::uint8_t h : doc.x_halves) out << ' ' << static_cast<int>(h);
  out << '\n';
  out << "dual_y " << doc.dual_y.size();
  for (const Rational& r : doc.dual_y) out << ' ' << rational_to_string(r);
  out << '\n';
  out << "dual_z " << doc.dual_z.size();
  for (const Rational& r : doc.dual_z) out << ' ' << rational_to_string(r);
  out << '\n';
  out << "slackness " << doc.slackness.size() << '\n';
  for (const std::string& line : doc.slackness) out << line << '\n';
  out << "end\n";
  return out.str();
}

CertificateDocument parse_certificate(const std::string& text) {
  std::vector<std::string> lines = logical_lines(text);
  Cursor cur{lines};
  CertificateDocument doc;

  auto [head, headline] = cur.next("header");
  if (head != "capstab-certificate v1")
    bad(headline, "expected 'capstab-certificate v1'");

  auto expect = [&cur](const char* key, std::size_t min_toks = 2) {
    auto [line, no] = cur.next(key);
    std::vector<std::string> toks = split_tokens(line);
    if (toks.empty() || toks[0] != key)
      bad(no, std::string("expected '") + key + "' line");
    if (toks.size() < min_toks) bad(no, std::string(key) + ": missing value");
    return std::make_pair(std::move(toks), no);
  };

  auto [inst, instno] = expect("instance");
  if (inst.size() != 2) bad(instno, "instance: one token expected");
  doc.instance = inst[1];

  auto [verdict, verno] = expect("verdict");
  if (verdict[1] == "stable")
    doc.stable = true;
  else if (verdict[1] == "unstable")
    doc.stable = false;
  else
    bad(verno, "verdict must be stable or unstable");

  auto [stab, stabno] = expect("stabilizer");
  if (stab[1] == "none") {
    if (stab.size() != 2) bad(stabno, "stabilizer none takes no arguments");
    doc.has_stabilizer = false;
  } else if (stab[1] == "capacity" || stab[1] == "edge") {
    doc.has_stabilizer = true;
    doc.kind = stab[1] == "capacity" ? StabKind::kCapacity : StabKind::kEdge;
    if (stab.size() < 3) bad(stabno, "stabilizer: missing count");
    long long k = parse_int(stab[2], stabno);
    if (k < 0 || stab.size() != static_cast<std::size_t>(k) + 3)
      bad(stabno, "stabilizer: count does not match entries");
    for (std::size_t i = 3; i < stab.size(); ++i)
      doc.solution.push_back(
          static_cast<int>(parse_int(stab[i], stabno)));
    auto [lb, lbno] = expect("lower_bound");
    if (lb.size() != 2) bad(lbno, "lower_bound: one value expected");
    doc.lower_bound = static_cast<int>(parse_int(lb[1], lbno));
  } else {
    bad(stabno, "stabilizer must be none, capacity or edge");
  }

  auto [wb, wbno] = expect("weight_before");
  if (wb.size() != 2) bad(wbno, "weight_before: one value expected");
  doc.weight_before = parse_rat(wb[1], wbno);
  auto [wa, wano] = expect("weight_after");
  if (wa.size() != 2) bad(wano, "weight_after: one value expected");
  doc.weight_after = parse_rat(wa[1], wano);

  auto counted = [&](std::vector<std::string> toks, int no) {
    long long k = parse_int(toks[1], no);
    if (k < 0 || toks.size() != static_cast<std::size_t>(k) + 2)
      bad(no, toks[0] + ": count does not match entries");
    return std::vector<std::string>(toks.begin() + 2, toks.end());
  };

  auto [mt, mtno] = expect("matching");
  for (const std::string& t : counted(mt, mtno))
    doc.matching.push_back(static_cast<int>(parse_int(t, mtno)));

  auto [fv, fvno] = expect("fractional_value");
  if (fv.size() != 2) bad(fvno, "fractional_value: one value expected");
  doc.fractional_value = parse_rat(fv[1], fvno);

  auto [xs, xsno] = expect("x");
  for (const std::string& t : counted(xs, xsno)) {
    long long h = parse_int(t, xsno);
    if (h < 0 || h > 2) bad(xsno, "x entries must be 0, 1 or 2");
    doc.x_halves.push_back(static_cast<std::uint8_t>(h));
  }

  auto [ys, ysno] = expect("dual_y");
  for (const std::string& t : counted(ys, ysno))
    doc.dual_y.push_back(parse_rat(t, ysno));
  auto [zs, zsno] = expect("dual_z");
  for (const std::string& t : counted(zs, zsno))
    doc.dual_z.push_back(parse_rat(t, zsno));

  auto [sl, slno] = expect("slackness");
  if (sl.size() != 2) bad(slno, "slackness: one count expected");
  long long k = parse_int(sl[1], slno);
  if (k < 0) bad(slno, "slackness: negative count");
  cur.raw = true;
  for (long long i = 0; i < k; ++i)
    doc.slackness.push_back(cur.next("slackness entry").first);
  cur.raw = false;

  auto [tail, tailno] = cur.next("end");
  if (tail != "end") bad(tailno, "expected 'end'");
  return doc;
}

bool verify_certificate(const CertificateDocument& doc, const CapGraph& g,
                        std::string* why) {
  if (doc.instance != instance_digest(g))
    return refuse(why, "instance digest mismatch");

  CapGraph target;
  try {
    target = doc.has_stabilizer
                 ? apply_stabilizer(g, doc.kind, doc.solution)
                 : g;
  } catch (const InvalidInstance& e) {
    return refuse(why, std::string("stabilizer not applicable: ") + e.what());
  }

  const int n = target.vertex_count();
  const int m = target.edge_count();
  if (static_cast<int>(doc.x_halves.size()) != m)
    return refuse(why, "x length does not match the target graph");
  if (static_cast<int>(doc.dual_y.size()) != n ||
      static_cast<int>(doc.dual_z.size()) != m)
    return refuse(why, "dual length does not match the target graph");

  CMatching matching = CMatching::empty(target);
  for (std::size_t i = 0; i < doc.matching.size(); ++i) {
    EdgeId e = doc.matching[i];
    if (e < 0 || e >= m) return refuse(why, "matching edge id out of range");
    if (i > 0 && doc.matching[i - 1] >= e)
      return refuse(why, "matching ids must be strictly ascending");
    matching.in[e] = 1;
  }
  std::string detail;
  if (!validate_c_matching(target, matching, &detail))
    return refuse(why, "matching infeasible: " + detail);
  if (matching_weight(target, matching) != doc.weight_after)
    return refuse(why, "matching weight differs from weight_after");

  HalfVector x(m);
  for (EdgeId e = 0; e < m; ++e) x.set_halves(e, doc.x_halves[e]);
  if (!is_feasible(target, x, &detail))
    return refuse(why, "fractional point infeasible: " + detail);
  if (!is_basic(target, x, &detail))
    return refuse(why, "fractional point not basic: " + detail);
  if (x.weight(target) != doc.fractional_value)
    return refuse(why, "fractional point weight differs from stated value");

  DualCover dual{doc.dual_y, doc.dual_z};
  if (!is_dual_feasible(target, dual, &detail))
    return refuse(why, "dual infeasible: " + detail);
  if (dual.objective(target) != doc.fractional_value)
    return refuse(why, "dual objective differs from fractional value");

  std::vector<std::string> gaps = check_complementary_slackness(target, x, dual);
  if (!gaps.empty()) return refuse(why, "slackness violated: " + gaps.front());
  std::vector<std::string> expected = build_transcript(target, x, dual);
  if (expected != doc.slackness)
    return refuse(why, "slackness transcript does not match the dual");

  if (doc.weight_after > doc.weight_before)
    return refuse(why, "stabilization cannot raise the matching weight");
  if (doc.has_stabilizer) {
    if (doc.lower_bound > static_cast<int>(doc.solution.size()))
      return refuse(why, "solution smaller than its stated lower bound");
    if (doc.weight_after != doc.fractional_value)
      return refuse(why, "target graph is not certified stable");
    if (doc.stable != doc.solution.empty())
      return refuse(why, "verdict inconsistent with the solution size");
  } else {
    if (doc.weight_before != doc.weight_after)
      return refuse(why, "check documents must repeat the weight");
    bool closed = doc.weight_after == doc.fractional_value;
    if (doc.stable != closed)
      return refuse(why, "verdict inconsistent with the value gap");
    if (!doc.stable && !(doc.fractional_value > doc.weight_after))
      return refuse(why, "unstable verdict without a value gap");
  }
  return true;
}

}  // namespace capstab
