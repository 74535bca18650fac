#pragma once

// Polynomial literal grammar shared by the CLI and report witnesses:
//
//   poly    := [sign] term { sign term }
//   term    := factor { '*' factor }
//   factor  := integer [ '/' integer ] | 'x' index [ '^' exponent ]
//   sign    := '+' | '-'
//
// Whitespace is ignored between tokens. Serialization always emits terms in
// descending graded-lexicographic order, e.g. "3/2*x0^2*x1 - x2 + 1".

#include <cctype>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>

#include "nambu/errors.hpp"
#include "nambu/exterior.hpp"
#include "nambu/poly.hpp"
#include "nambu/rational.hpp"

namespace nambu {

inline std::string format_monomial(const Monomial& mono) {
  std::string out;
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (mono[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(i);
    if (mono[i] > 1) out += '^' + std::to_string(mono[i]);
  }
  return out;
}

inline std::string format_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [mono, c] = *it;
    const bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string factors = format_monomial(mono);
    if (factors.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += factors;
    } else {
      out += to_string(mag) + '*' + factors;
    }
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  Poly parse() {
    Poly out(nvars_);
    skip_ws();
    if (at_end()) fail("empty polynomial literal");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      Poly t = term();
      if (negative) {
        out -= t;
      } else {
        out += t;
      }
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
      negative = peek() == '-';
      ++pos_;
    }
    return out;
  }

 private:
  Poly term() {
    Rational coeff(1);
    Monomial mono(nvars_, 0);
    while (true) {
      skip_ws();
      if (at_end()) fail("expected a factor");
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        Integer num(digits(), 10);
        Integer den(1);
        skip_ws();
        if (!at_end() && peek() == '/') {
          ++pos_;
          skip_ws();
          den = Integer(digits(), 10);
          if (den == 0) fail("zero denominator");
        }
        coeff *= make_rational(num, den);
      } else if (c == 'x') {
        ++pos_;
        std::size_t var = std::stoul(digits());
        if (var >= nvars_) fail("variable x" + std::to_string(var) + " out of range");
        std::uint32_t e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          e = static_cast<std::uint32_t>(std::stoul(digits()));
        }
        mono[var] += e;
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
    }
    Poly p(nvars_);
    p.add_term(std::move(mono), coeff);
    return p;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial literal: " + what, 1, pos_ + 1);
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(std::string_view text, std::size_t nvars) {
  return detail::PolyParser(text, nvars).parse();
}

/// Human-readable tensor: "(x2)*D[0,1] + (x0)*D[1,2]" for multivectors, "dx[...]" for forms.
template <class Kind>
std::string format_tensor(const Graded<Kind>& a) {
  if (a.is_zero()) return "0";
  constexpr const char* basis = std::is_same_v<Kind, VectorKind> ? "D" : "dx";
  std::ostringstream out;
  bool first = true;
  for (const auto& [idx, c] : a.terms()) {
    if (!first) out << " + ";
    first = false;
    out << '(' << format_poly(c) << ')';
    if (idx.empty()) continue;
    out << '*' << basis << '[';
    for (std::size_t k = 0; k < idx.size(); ++k) out << (k ? "," : "") << idx[k];
    out << ']';
  }
  return out.str();
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << format_poly(p); }

template <class Kind>
std::ostream& operator<<(std::ostream& os, const Graded<Kind>& a) {
  return os << format_tensor(a);
}

}  // namespace nambu
