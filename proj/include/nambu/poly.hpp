#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "nambu/errors.hpp"
#include "nambu/rational.hpp"

namespace nambu {

/// Exponent vector; its length is the ambient variable count.
using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Monomial& mono) {
  return std::accumulate(mono.begin(), mono.end(), std::uint64_t{0});
}

/// Graded lexicographic order: total degree first, then lexicographic with x0 most significant.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;  // among equal degree, x0^k sorts last (largest)
  }
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are equal.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
  }

  static Poly variable(std::size_t nvars, std::size_t k) {
    if (k >= nvars) throw IndexError("variable index " + std::to_string(k) + " out of range");
    Monomial mono(nvars, 0);
    mono[k] = 1;
    Poly p(nvars);
    p.add_term(std::move(mono), Rational(1));
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  /// Highest total degree; -1 for the zero polynomial.
  std::int64_t degree() const {
    if (terms_.empty()) return -1;
    return static_cast<std::int64_t>(total_degree(terms_.rbegin()->first));
  }

  bool is_homogeneous(std::uint64_t d) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const auto& t) { return total_degree(t.first) == d; });
  }

  Rational coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Monomial(nvars_, 0)); }

  void add_term(Monomial mono, const Rational& c) {
    if (mono.size() != nvars_) throw DimensionError("monomial length does not match nvars");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(mono), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& q) {
    check_same_ring(q);
    for (const auto& [mono, c] : q.terms_) add_term(mono, c);
    return *this;
  }

  Poly& operator-=(const Poly& q) {
    check_same_ring(q);
    for (const auto& [mono, c] : q.terms_) add_term(mono, -c);
    return *this;
  }

  Poly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [mono, coef] : terms_) coef *= c;
    }
    return *this;
  }

  friend Poly operator+(Poly p, const Poly& q) { return p += q; }
  friend Poly operator-(Poly p, const Poly& q) { return p -= q; }
  friend Poly operator*(Poly p, const Rational& c) { return p *= c; }
  friend Poly operator*(const Rational& c, Poly p) { return p *= c; }

  friend Poly operator-(Poly p) {
    for (auto& [mono, coef] : p.terms_) coef = -coef;
    return p;
  }

  friend Poly operator*(const Poly& p, const Poly& q) {
    p.check_same_ring(q);
    Poly out(p.nvars_);
    Monomial mono(p.nvars_);
    for (const auto& [ma, ca] : p.terms_) {
      for (const auto& [mb, cb] : q.terms_) {
        for (std::size_t i = 0; i < p.nvars_; ++i) mono[i] = ma[i] + mb[i];
        out.add_term(mono, ca * cb);
      }
    }
    return out;
  }

  Poly& operator*=(const Poly& q) { return *this = *this * q; }

  friend bool operator==(const Poly& p, const Poly& q) {
    return p.nvars_ == q.nvars_ && p.terms_ == q.terms_;
  }

  /// Formal partial derivative with respect to x_k.
  Poly partial(std::size_t k) const {
    if (k >= nvars_) throw IndexError("partial: variable index " + std::to_string(k) + " out of range");
    Poly out(nvars_);
    for (const auto& [mono, c] : terms_) {
      if (mono[k] == 0) continue;
      Monomial m = mono;
      Rational factor(static_cast<unsigned long>(m[k]));
      --m[k];
      out.add_term(std::move(m), c * factor);
    }
    return out;
  }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars_) throw DimensionError("evaluate: point length does not match nvars");
    Rational sum(0);
    for (const auto& [mono, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < nvars_; ++i) {
        for (std::uint32_t e = 0; e < mono[i]; ++e) term *= point[i];
      }
      sum += term;
    }
    return sum;
  }

  /// Reinterpret in a ring with `new_nvars` variables, sending x_i to x_{i + offset}.
  Poly embed(std::size_t new_nvars, std::size_t offset = 0) const {
    if (offset + nvars_ > new_nvars) throw DimensionError("embed: target ring too small");
    Poly out(new_nvars);
    for (const auto& [mono, c] : terms_) {
      Monomial m(new_nvars, 0);
      std::copy(mono.begin(), mono.end(), m.begin() + static_cast<std::ptrdiff_t>(offset));
      out.add_term(std::move(m), c);
    }
    return out;
  }

  /// Degree of the polynomial in the variables [first, last); -1 for zero.
  std::int64_t degree_in(std::size_t first, std::size_t last) const {
    std::int64_t best = -1;
    for (const auto& [mono, c] : terms_) {
      std::int64_t d = 0;
      for (std::size_t i = first; i < last && i < nvars_; ++i) d += mono[i];
      best = std::max(best, d);
    }
    return best;
  }

  /// True when no variable outside [first, last) occurs.
  bool depends_only_on(std::size_t first, std::size_t last) const {
    for (const auto& [mono, c] : terms_)
      for (std::size_t i = 0; i < nvars_; ++i)
        if ((i < first || i >= last) && mono[i] != 0) return false;
    return true;
  }

 private:
  void check_same_ring(const Poly& q) const {
    if (nvars_ != q.nvars_)
      throw DimensionError("polynomials over " + std::to_string(nvars_) + " and " +
                           std::to_string(q.nvars_) + " variables");
  }

  std::size_t nvars_;
  TermMap terms_;
};

/// Free-function spellings used by the checkers.
inline Poly poly_add(const Poly& p, const Poly& q) { return p + q; }
inline Poly poly_mul(const Poly& p, const Poly& q) { return p * q; }
inline Poly poly_partial(const Poly& p, std::size_t k) { return p.partial(k); }
inline Rational poly_eval(const Poly& p, std::span<const Rational> point) { return p.evaluate(point); }

}  // namespace nambu
