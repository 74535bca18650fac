#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nambu/errors.hpp"
#include "nambu/linalg.hpp"
#include "nambu/poly.hpp"

namespace nambu {

/// Strictly increasing list of coordinate directions in [0, m).
using MultiIndex = std::vector<std::uint32_t>;

/// Sorts `idx` in place and returns the sign of the sorting permutation, or 0 on a repeat.
inline int canonicalize_index(MultiIndex& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

/// All strictly increasing k-subsets of [0, m) in lexicographic order.
inline std::vector<MultiIndex> increasing_tuples(std::size_t m, std::size_t k) {
  std::vector<MultiIndex> out;
  if (k > m) return out;
  MultiIndex cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = static_cast<std::uint32_t>(i);
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

struct VectorKind {};
struct FormKind {};

/// Antisymmetric tensor field with polynomial coefficients on R^m.
///
/// `VectorKind` gives multivector fields (basis ∂_I), `FormKind` differential
/// forms (basis dx_I). Terms are keyed by strictly increasing multi-indices and
/// zero coefficients are pruned, so equality is structural. Degree -1 is only
/// used for the (always zero) Schouten bracket of two functions.
template <class Kind>
class Graded {
 public:
  using TermMap = std::map<MultiIndex, Poly>;

  Graded(std::size_t m, int degree) : m_(m), degree_(degree) {
    if (degree < -1) throw ShapeError("degree " + std::to_string(degree) + " is not allowed");
  }

  static Graded function(const Poly& f) {
    Graded g(f.nvars(), 0);
    g.add_term({}, f);
    return g;
  }

  static Graded basis(std::size_t m, MultiIndex idx, const Rational& c = Rational(1)) {
    Graded g(m, static_cast<int>(idx.size()));
    g.add_term(std::move(idx), Poly::constant(m, c));
    return g;
  }

  static Graded basis(std::size_t m, MultiIndex idx, const Poly& coeff) {
    Graded g(m, static_cast<int>(idx.size()));
    g.add_term(std::move(idx), coeff);
    return g;
  }

  std::size_t m() const { return m_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coeff·e_idx; `idx` may be unsorted, the permutation sign is applied.
  void add_term(MultiIndex idx, const Poly& coeff) {
    if (static_cast<int>(idx.size()) != degree_)
      throw ShapeError("term of length " + std::to_string(idx.size()) + " in a degree " +
                       std::to_string(degree_) + " tensor");
    if (coeff.nvars() != m_) throw DimensionError("coefficient ring does not match dimension");
    for (auto i : idx)
      if (i >= m_) throw IndexError("direction " + std::to_string(i) + " out of range");
    int sign = canonicalize_index(idx);
    if (sign == 0 || coeff.is_zero()) return;
    auto it = terms_.find(idx);
    if (it == terms_.end()) {
      terms_.emplace(std::move(idx), sign > 0 ? coeff : -coeff);
      return;
    }
    if (sign > 0) {
      it->second += coeff;
    } else {
      it->second -= coeff;
    }
    if (it->second.is_zero()) terms_.erase(it);
  }

  Poly coefficient(const MultiIndex& sorted) const {
    auto it = terms_.find(sorted);
    return it == terms_.end() ? Poly(m_) : it->second;
  }

  /// The single coefficient of a degree-0 tensor.
  Poly as_function() const {
    if (degree_ != 0) throw ShapeError("as_function on degree " + std::to_string(degree_));
    return coefficient({});
  }

  /// Component along ∂_j (or dx_j) of a degree-1 tensor.
  Poly component(std::uint32_t j) const {
    if (degree_ != 1) throw ShapeError("component on degree " + std::to_string(degree_));
    return coefficient({j});
  }

  Graded& operator+=(const Graded& o) {
    check_compatible(o);
    for (const auto& [idx, c] : o.terms_) add_term(idx, c);
    return *this;
  }

  Graded& operator-=(const Graded& o) {
    check_compatible(o);
    for (const auto& [idx, c] : o.terms_) add_term(idx, -c);
    return *this;
  }

  friend Graded operator+(Graded a, const Graded& b) { return a += b; }
  friend Graded operator-(Graded a, const Graded& b) { return a -= b; }

  friend Graded operator-(Graded a) {
    for (auto& [idx, c] : a.terms_) c = -c;
    return a;
  }

  friend Graded operator*(const Poly& f, const Graded& a) {
    if (f.nvars() != a.m_) throw DimensionError("scalar ring does not match dimension");
    Graded out(a.m_, a.degree_);
    for (const auto& [idx, c] : a.terms_) out.add_term(idx, f * c);
    return out;
  }

  friend Graded operator*(const Rational& r, const Graded& a) {
    Graded out(a.m_, a.degree_);
    for (const auto& [idx, c] : a.terms_) out.add_term(idx, c * r);
    return out;
  }

  friend bool operator==(const Graded& a, const Graded& b) {
    return a.m_ == b.m_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const Graded& o) const {
    if (m_ != o.m_) throw DimensionError("tensors over different dimensions");
    if (degree_ != o.degree_) throw ShapeError("adding tensors of different degree");
  }

  std::size_t m_;
  int degree_;
  TermMap terms_;
};

using MultiVectorField = Graded<VectorKind>;
using DiffForm = Graded<FormKind>;

/// ∂_j as a vector field on R^m.
inline MultiVectorField coordinate_field(std::size_t m, std::uint32_t j) {
  return MultiVectorField::basis(m, {j});
}

/// The 1-form dx_j.
inline DiffForm coordinate_form(std::size_t m, std::uint32_t j) { return DiffForm::basis(m, {j}); }

/// ∂_{i1}∧⋯∧∂_{ik} for the given (not necessarily sorted) directions.
inline MultiVectorField basis_multivector(std::size_t m, MultiIndex idx) {
  return MultiVectorField::basis(m, std::move(idx));
}

template <class Kind>
Graded<Kind> wedge(const Graded<Kind>& a, const Graded<Kind>& b) {
  if (a.m() != b.m()) throw DimensionError("wedge: dimension mismatch");
  Graded<Kind> out(a.m(), a.degree() + b.degree());
  MultiIndex idx;
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add_term(idx, ca * cb);
    }
  }
  return out;
}

inline MultiVectorField mv_wedge(const MultiVectorField& a, const MultiVectorField& b) {
  return wedge(a, b);
}

namespace detail {

/// Inserts a degree-1 tensor of the opposite kind into the first slot:
/// i_w(e_{i1}∧⋯∧e_{ip}) = Σ_k (-1)^{k-1} w_{ik} e_{i1}∧⋯ê_{ik}⋯∧e_{ip}.
template <class OneKind, class Kind>
Graded<Kind> insert_first(const Graded<OneKind>& one, const Graded<Kind>& a) {
  if (one.m() != a.m()) throw DimensionError("contraction: dimension mismatch");
  if (one.degree() != 1) throw ShapeError("contraction by a tensor of degree != 1");
  if (a.degree() < 1) throw ShapeError("contraction of a degree-0 tensor");
  Graded<Kind> out(a.m(), a.degree() - 1);
  for (const auto& [idx, c] : a.terms()) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      Poly w = one.coefficient({idx[k]});
      if (w.is_zero()) continue;
      MultiIndex rest;
      rest.reserve(idx.size() - 1);
      for (std::size_t t = 0; t < idx.size(); ++t)
        if (t != k) rest.push_back(idx[t]);
      Poly term = w * c;
      out.add_term(std::move(rest), k % 2 == 0 ? term : -term);
    }
  }
  return out;
}

}  // namespace detail

/// i_ω A for a 1-form ω, inserting into the first slot.
inline MultiVectorField contract_once(const DiffForm& omega, const MultiVectorField& a) {
  return detail::insert_first(omega, a);
}

/// i_X ω for a vector field X.
inline DiffForm interior(const MultiVectorField& x, const DiffForm& omega) {
  return detail::insert_first(x, omega);
}

/// df as a 1-form.
inline DiffForm differential(const Poly& f) {
  DiffForm out(f.nvars(), 1);
  for (std::uint32_t j = 0; j < f.nvars(); ++j) out.add_term({j}, f.partial(j));
  return out;
}

/// Λ_{f1..fk} = i_{dfk}⋯i_{df1} Λ.
inline MultiVectorField contract_functions(const MultiVectorField& lambda, std::span<const Poly> fs) {
  if (static_cast<int>(fs.size()) > lambda.degree())
    throw ShapeError("contract_functions: " + std::to_string(fs.size()) +
                     " functions for a degree " + std::to_string(lambda.degree()) + " tensor");
  MultiVectorField cur = lambda;
  for (const auto& f : fs) {
    if (f.nvars() != lambda.m()) throw DimensionError("contract_functions: function ring mismatch");
    cur = contract_once(differential(f), cur);
  }
  return cur;
}

/// <Λ, μ1∧⋯∧μn> = i_{μn}⋯i_{μ1} Λ for 1-forms μ.
inline Poly pairing(const MultiVectorField& lambda, std::span<const DiffForm> mus) {
  if (static_cast<int>(mus.size()) != lambda.degree())
    throw ShapeError("pairing: " + std::to_string(mus.size()) + " forms against degree " +
                     std::to_string(lambda.degree()));
  MultiVectorField cur = lambda;
  for (const auto& mu : mus) cur = contract_once(mu, cur);
  return cur.as_function();
}

inline DiffForm exterior_derivative(const DiffForm& omega) {
  DiffForm out(omega.m(), omega.degree() + 1);
  for (const auto& [idx, c] : omega.terms()) {
    for (std::uint32_t j = 0; j < omega.m(); ++j) {
      if (std::find(idx.begin(), idx.end(), j) != idx.end()) continue;
      Poly dc = c.partial(j);
      if (dc.is_zero()) continue;
      MultiIndex with_j{j};
      with_j.insert(with_j.end(), idx.begin(), idx.end());
      out.add_term(std::move(with_j), dc);
    }
  }
  return out;
}

/// X(f) for a vector field X.
inline Poly apply_field(const MultiVectorField& x, const Poly& f) {
  if (x.degree() != 1) throw ShapeError("apply_field: not a vector field");
  if (f.nvars() != x.m()) throw DimensionError("apply_field: ring mismatch");
  Poly out(x.m());
  for (const auto& [idx, c] : x.terms()) out += c * f.partial(idx[0]);
  return out;
}

/// Lie bracket of vector fields, [X,Y]^j = X(Y^j) - Y(X^j).
inline MultiVectorField lie_bracket(const MultiVectorField& x, const MultiVectorField& y) {
  if (x.degree() != 1 || y.degree() != 1) throw ShapeError("lie_bracket: not vector fields");
  if (x.m() != y.m()) throw DimensionError("lie_bracket: dimension mismatch");
  MultiVectorField out(x.m(), 1);
  for (std::uint32_t j = 0; j < x.m(); ++j) {
    Poly c = apply_field(x, y.component(j)) - apply_field(y, x.component(j));
    out.add_term({j}, c);
  }
  return out;
}

namespace detail {

/// Splits f ∂_{i1}∧⋯∧∂_{ip} into the decomposable factors (f∂_{i1}, ∂_{i2}, …, ∂_{ip}).
inline std::vector<MultiVectorField> factors(std::size_t m, const MultiIndex& idx, const Poly& coeff) {
  std::vector<MultiVectorField> out;
  out.reserve(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    MultiVectorField x(m, 1);
    x.add_term({idx[a]}, a == 0 ? coeff : Poly::constant(m, 1));
    out.push_back(std::move(x));
  }
  return out;
}

/// Wedge of all factors except position `skip`; the empty wedge is the constant 1.
inline MultiVectorField wedge_except(const std::vector<MultiVectorField>& fs, std::size_t skip,
                                     std::size_t m) {
  MultiVectorField acc = MultiVectorField::function(Poly::constant(m, 1));
  for (std::size_t c = 0; c < fs.size(); ++c)
    if (c != skip) acc = wedge(acc, fs[c]);
  return acc;
}

/// [Y1∧⋯∧Yq, f] = Σ_b (-1)^{q-b} Y_b(f) Y1∧⋯Ŷ_b⋯∧Yq  (b is 1-based).
inline MultiVectorField bracket_with_function(const std::vector<MultiVectorField>& ys, const Poly& f,
                                              std::size_t m) {
  const std::size_t q = ys.size();
  MultiVectorField out(m, static_cast<int>(q) - 1);
  for (std::size_t b = 0; b < q; ++b) {
    Poly yf = apply_field(ys[b], f);
    if (yf.is_zero()) continue;
    MultiVectorField term = yf * wedge_except(ys, b, m);
    // (-1)^{q-b} with 1-based b is (-1)^{q-1-b} with 0-based b.
    if ((q - 1 - b) % 2 == 0) {
      out += term;
    } else {
      out -= term;
    }
  }
  return out;
}

}  // namespace detail

/// Schouten–Nijenhuis bracket, normalised so that [X, A] = L_X A for a vector field X.
///
/// Each pair of terms is split into decomposable factors and expanded with
/// [X1∧⋯∧Xp, Y1∧⋯∧Yq] = Σ_{a,b} (-1)^{a+b} [X_a,Y_b]∧X1∧⋯X̂_a⋯∧Xp∧Y1∧⋯Ŷ_b⋯∧Yq,
/// functions being handled by [X1∧⋯∧Xp, f] and graded antisymmetry.
inline MultiVectorField schouten(const MultiVectorField& a, const MultiVectorField& b) {
  if (a.m() != b.m()) throw DimensionError("schouten: dimension mismatch");
  const std::size_t m = a.m();
  const int p = a.degree(), q = b.degree();
  if (p < 0 || q < 0) throw ShapeError("schouten: negative degree operand");
  MultiVectorField out(m, p + q - 1);
  if (p == 0 && q == 0) return out;
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      if (p == 0) {
        // [f, B] = (-1)^q [B, f]
        auto term = detail::bracket_with_function(detail::factors(m, ib, cb), ca, m);
        out += (q % 2 == 0) ? term : -term;
        continue;
      }
      auto xs = detail::factors(m, ia, ca);
      if (q == 0) {
        out += detail::bracket_with_function(xs, cb, m);
        continue;
      }
      auto ys = detail::factors(m, ib, cb);
      for (std::size_t s = 0; s < xs.size(); ++s) {
        MultiVectorField x_rest = detail::wedge_except(xs, s, m);
        for (std::size_t t = 0; t < ys.size(); ++t) {
          MultiVectorField br = lie_bracket(xs[s], ys[t]);
          if (br.is_zero()) continue;
          MultiVectorField term = wedge(wedge(br, x_rest), detail::wedge_except(ys, t, m));
          out += ((s + t) % 2 == 0) ? term : -term;
        }
      }
    }
  }
  return out;
}

inline MultiVectorField lie_derivative(const MultiVectorField& x, const MultiVectorField& t) {
  if (x.degree() != 1) throw ShapeError("lie_derivative along a non-vector field");
  return schouten(x, t);
}

/// Cartan's formula L_X ω = i_X dω + d i_X ω.
inline DiffForm lie_derivative(const MultiVectorField& x, const DiffForm& omega) {
  if (x.degree() != 1) throw ShapeError("lie_derivative along a non-vector field");
  if (x.m() != omega.m()) throw DimensionError("lie_derivative: dimension mismatch");
  DiffForm out(omega.m(), omega.degree());
  out += interior(x, exterior_derivative(omega));
  if (omega.degree() >= 1) out += exterior_derivative(interior(x, omega));
  return out;
}

/// Re-home a tensor into dimension `new_m`, shifting every direction and variable by `offset`.
template <class Kind>
Graded<Kind> embed(const Graded<Kind>& a, std::size_t new_m, std::size_t offset = 0) {
  if (a.m() + offset > new_m) throw DimensionError("embed: target too small");
  Graded<Kind> out(new_m, a.degree());
  for (const auto& [idx, c] : a.terms()) {
    MultiIndex shifted = idx;
    for (auto& i : shifted) i += static_cast<std::uint32_t>(offset);
    out.add_term(std::move(shifted), c.embed(new_m, offset));
  }
  return out;
}

/// d_T f = Σ_k ẋ^k ∂f/∂x^k on R^{2m} with coordinates (x^0..x^{m-1}, ẋ^0..ẋ^{m-1}).
inline Poly tangent_lift_function(const Poly& f) {
  const std::size_t m = f.nvars();
  Poly out(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    Poly d = f.partial(k);
    if (d.is_zero()) continue;
    out += Poly::variable(2 * m, m + k) * d.embed(2 * m);
  }
  return out;
}

/// Complete lift of a multivector field to TR^m:
///   d_T(f ∂_{i1}∧⋯∧∂_{in}) = d_T(f) ∂_{ẋ^{i1}}∧⋯∧∂_{ẋ^{in}}
///                          + Σ_k f ∂_{ẋ^{i1}}∧⋯∧∂_{x^{ik}}∧⋯∧∂_{ẋ^{in}}.
inline MultiVectorField tangent_lift(const MultiVectorField& a) {
  const std::size_t m = a.m();
  MultiVectorField out(2 * m, a.degree());
  for (const auto& [idx, c] : a.terms()) {
    MultiIndex dotted = idx;
    for (auto& i : dotted) i += static_cast<std::uint32_t>(m);
    out.add_term(dotted, tangent_lift_function(c));
    Poly lifted = c.embed(2 * m);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      MultiIndex mixed = dotted;
      mixed[k] = idx[k];
      out.add_term(std::move(mixed), lifted);
    }
  }
  return out;
}

/// A multivector with constant coefficients, i.e. an element of Λ^p R^m.
class ConstMultiVector {
 public:
  ConstMultiVector(std::size_t m, int degree) : field_(m, degree) {}

  explicit ConstMultiVector(MultiVectorField field) : field_(std::move(field)) {
    for (const auto& [idx, c] : field_.terms())
      if (!c.is_constant()) throw ShapeError("ConstMultiVector with a non-constant coefficient");
  }

  static ConstMultiVector basis(std::size_t m, MultiIndex idx, const Rational& c = Rational(1)) {
    return ConstMultiVector(MultiVectorField::basis(m, std::move(idx), c));
  }

  void add_term(MultiIndex idx, const Rational& c) {
    field_.add_term(std::move(idx), Poly::constant(field_.m(), c));
  }

  const MultiVectorField& field() const { return field_; }
  std::size_t m() const { return field_.m(); }
  int degree() const { return field_.degree(); }
  bool is_zero() const { return field_.is_zero(); }

  Rational coefficient(const MultiIndex& sorted) const { return field_.coefficient(sorted).constant_term(); }

  friend ConstMultiVector operator+(const ConstMultiVector& a, const ConstMultiVector& b) {
    return ConstMultiVector(a.field_ + b.field_);
  }
  friend ConstMultiVector operator-(const ConstMultiVector& a, const ConstMultiVector& b) {
    return ConstMultiVector(a.field_ - b.field_);
  }
  friend ConstMultiVector operator*(const Rational& r, const ConstMultiVector& a) {
    return ConstMultiVector(r * a.field_);
  }
  friend bool operator==(const ConstMultiVector&, const ConstMultiVector&) = default;

 private:
  MultiVectorField field_;
};

inline ConstMultiVector evaluate_mv(const MultiVectorField& a, std::span<const Rational> point) {
  if (point.size() != a.m()) throw DimensionError("evaluate_mv: point length mismatch");
  ConstMultiVector out(a.m(), a.degree());
  for (const auto& [idx, c] : a.terms()) out.add_term(idx, c.evaluate(point));
  return out;
}

/// Span of all contractions i_ω λ by basis (p-1)-covectors; the factor space when λ is decomposable.
inline Subspace support_subspace(const ConstMultiVector& lambda) {
  if (lambda.is_zero()) throw ShapeError("support_subspace of the zero multivector");
  const std::size_t m = lambda.m();
  if (lambda.degree() == 0) return Subspace(m);
  std::map<MultiIndex, int> covectors;
  for (const auto& [idx, c] : lambda.field().terms()) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      MultiIndex rest;
      for (std::size_t t = 0; t < idx.size(); ++t)
        if (t != k) rest.push_back(idx[t]);
      covectors.emplace(std::move(rest), 0);
    }
  }
  std::vector<RatVector> vectors;
  for (const auto& [cov, unused] : covectors) {
    MultiVectorField cur = lambda.field();
    for (auto j : cov) cur = contract_once(coordinate_form(m, j), cur);
    RatVector v(m);
    for (const auto& [idx, c] : cur.terms()) v[idx[0]] = c.constant_term();
    vectors.push_back(std::move(v));
  }
  return subspace_span(vectors, m);
}

/// Exact test for decomposability of a constant multivector: dim(support) = degree.
inline bool is_decomposable(const ConstMultiVector& lambda) {
  if (lambda.is_zero()) return true;
  return support_subspace(lambda).dim() == static_cast<std::size_t>(lambda.degree());
}

}  // namespace nambu
