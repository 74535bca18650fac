#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "nambu/errors.hpp"

namespace nambu {

// GMP keeps mpq_class canonical after every arithmetic operation: the
// fraction is reduced and the denominator positive.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
}

/// "p" or "p/q" with p, q decimal integers; q > 0.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto is_integer = [](std::string_view t) {
    if (!t.empty() && t.front() == '-') t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num_text = s.substr(0, slash);
  std::string den_text = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_integer(num_text) || !is_integer(den_text))
    throw ParseError("malformed rational '" + s + "'");
  Integer num(num_text, 10), den(den_text, 10);
  if (den <= 0) throw ParseError("rational denominator must be positive in '" + s + "'");
  return make_rational(num, den);
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

}  // namespace nambu
