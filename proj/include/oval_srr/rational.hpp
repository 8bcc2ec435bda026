#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "errors.hpp"

namespace oval {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error(Errc::InvalidParameters, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "p/q" or "p"; always canonical.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "3", "-2", "7/2" and finite decimals such as "0.25".
inline Rational parse_rational(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw Error(Errc::ParseError, "empty rational");
  try {
    auto dot = str.find('.');
    if (dot != std::string::npos) {
      std::string digits = str.substr(0, dot) + str.substr(dot + 1);
      mpz_class den = 1;
      for (std::size_t i = dot + 1; i < str.size(); ++i) den *= 10;
      Rational r(mpz_class(digits, 10), den);
      r.canonicalize();
      return r;
    }
    Rational r(str, 10);
    if (r.get_den() == 0) throw Error(Errc::ParseError, "zero denominator in " + str);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error(Errc::ParseError, "not a rational: " + str);
  }
}

}  // namespace oval
