#pragma once

#include <string>
#include <string_view>

#include "graph.hpp"

namespace capstab {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Line-oriented instance format:
//   # comment (anywhere, also trailing)
//   graph <n> <m>
//   vertex <name> <capacity>     (n lines, names are whitespace-free tokens)
//   edge <name> <name> <weight>  (m lines, weight is "p" or "p/q")
CapGraph parse_instance(std::string_view text);

// Canonical form: header, vertices in id order, edges in id order, single
// spaces, trailing newline. parse(serialize(g)) reproduces g exactly.
std::string serialize_instance(const CapGraph& g);

// FNV-1a 64 over the canonical serialization, rendered "fnv1a64:<16 hex>".
std::string instance_digest(const CapGraph& g);

}  // namespace capstab
