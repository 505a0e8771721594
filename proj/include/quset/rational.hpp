#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace quset {

/// Exact scalar of the ambient inner-product space. Backed by an
/// arbitrary-precision integer fraction kept in lowest terms with a
/// positive denominator; no operation ever rounds.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p". Rejects empty strings and zero denominators.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  try {
    return Rational(text);
  } catch (const std::exception&) {
    throw ParseError("bad rational literal: '" + text + "'");
  }
}

/// Inverse of parse_rational: "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace quset
