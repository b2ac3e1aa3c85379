#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "rootgrade/error.hpp"

namespace rootgrade {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
  if (r.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace rootgrade
