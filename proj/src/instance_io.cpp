#include "instance_io.hpp"

#include <charconv>
#include <cstdint>
#include <sstream>
#include <unordered_map>

namespace capstab {
namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '#')
      ++j;
    out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_count(const std::string& tok, int line, const char* what) {
  long long value = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || p != tok.data() + tok.size() || value < 0)
    throw ParseError(line, std::string("bad ") + what + ": " + tok);
  return value;
}

}  // namespace

CapGraph parse_instance(std::string_view text) {
  std::vector<std::string> names;
  std::vector<long long> caps;
  std::vector<std::tuple<int, int, Rational>> edges;
  std::unordered_map<std::string, int> index;
  std::unordered_map<long long, int> edge_lines;  // endpoint pair -> line

  long long want_n = -1, want_m = -1;
  int line_no = 0;
  size_t pos = 0;
  bool saw_header = false;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok[0] == "graph") {
      if (saw_header) throw ParseError(line_no, "repeated graph header");
      if (tok.size() != 3)
        throw ParseError(line_no, "expected: graph <n> <m>");
      want_n = parse_count(tok[1], line_no, "vertex count");
      want_m = parse_count(tok[2], line_no, "edge count");
      saw_header = true;
    } else if (tok[0] == "vertex") {
      if (!saw_header)
        throw ParseError(line_no, "vertex line before graph header");
      if (tok.size() != 3)
        throw ParseError(line_no, "expected: vertex <name> <capacity>");
      if (index.count(tok[1]))
        throw ParseError(line_no, "duplicate vertex name: " + tok[1]);
      index.emplace(tok[1], static_cast<int>(names.size()));
      names.push_back(tok[1]);
      caps.push_back(parse_count(tok[2], line_no, "capacity"));
    } else if (tok[0] == "edge") {
      if (!saw_header)
        throw ParseError(line_no, "edge line before graph header");
      if (tok.size() != 4)
        throw ParseError(line_no, "expected: edge <u> <v> <weight>");
      auto iu = index.find(tok[1]);
      auto iv = index.find(tok[2]);
      if (iu == index.end())
        throw ParseError(line_no, "unknown vertex: " + tok[1]);
      if (iv == index.end())
        throw ParseError(line_no, "unknown vertex: " + tok[2]);
      if (iu->second == iv->second)
        throw ParseError(line_no, "self-loop at vertex " + tok[1]);
      auto w = parse_rational(tok[3]);
      if (!w) throw ParseError(line_no, "bad weight: " + tok[3]);
      if (*w < 0) throw ParseError(line_no, "negative weight: " + tok[3]);
      int a = std::min(iu->second, iv->second);
      int b = std::max(iu->second, iv->second);
      long long key = static_cast<long long>(a) * (1LL << 32) + b;
      auto prev = edge_lines.find(key);
      if (prev != edge_lines.end())
        throw ParseError(line_no, "duplicate edge " + tok[1] + " " + tok[2] +
                                      " (first at line " +
                                      std::to_string(prev->second) + ")");
      edge_lines.emplace(key, line_no);
      edges.emplace_back(iu->second, iv->second, std::move(*w));
    } else {
      throw ParseError(line_no, "unknown directive: " + tok[0]);
    }
  }
  if (!saw_header) throw ParseError(1, "missing graph header");
  if (want_n != static_cast<long long>(names.size()))
    throw ParseError(line_no, "header declares " + std::to_string(want_n) +
                                  " vertices, found " +
                                  std::to_string(names.size()));
  if (want_m != static_cast<long long>(edges.size()))
    throw ParseError(line_no, "header declares " + std::to_string(want_m) +
                                  " edges, found " +
                                  std::to_string(edges.size()));
  try {
    return CapGraph::build(std::move(names), std::move(caps),
                           std::move(edges));
  } catch (const InvalidInstance& e) {
    throw ParseError(line_no, e.what());
  }
}

std::string serialize_instance(const CapGraph& g) {
  std::ostringstream out;
  out << "graph " << g.vertex_count() << " " << g.edge_count() << "\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    out << "vertex " << g.vertex_name(v) << " " << g.capacity(v) << "\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    out << "edge " << g.vertex_name(ed.u) << " " << g.vertex_name(ed.v) << " "
        << rational_to_string(ed.weight) << "\n";
  }
  return out.str();
}

std::string instance_digest(const CapGraph& g) {
  std::string canon = serialize_instance(g);
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string("fnv1a64:") + buf;
}

}  // namespace capstab
