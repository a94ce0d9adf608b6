#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace capstab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p" or "p/q" with optional leading minus, q > 0.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto is_int = [](std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      if (!is_int(text)) return std::nullopt;
      return Rational(BigInt(std::string(text)));
    }
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    BigInt d{std::string(den)};
    if (d <= 0) return std::nullopt;
    return Rational(BigInt(std::string(num)), d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// Prints "p" for integers, "p/q" otherwise; inverse of parse_rational.
inline std::string rational_to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

}  // namespace capstab
