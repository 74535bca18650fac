#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nambu/exterior.hpp"
#include "nambu/linalg.hpp"
#include "nambu/nambu.hpp"
#include "nambu/report.hpp"

namespace nambu {

/// Structure constants c^k_{i1..in} of an n-ary skew bracket on Q^m, stored on increasing tuples.
class NAryStructure {
 public:
  NAryStructure(int n, std::size_t m) : n_(n), m_(m) {
    if (n < 1) throw ShapeError("NAryStructure: arity must be at least 1");
  }

  int n() const { return n_; }
  std::size_t m() const { return m_; }
  const std::map<MultiIndex, RatVector>& constants() const { return c_; }

  /// Adds `value` to c^k of the tuple, which may be unsorted (the permutation sign is applied).
  void add(MultiIndex tuple, std::uint32_t k, const Rational& value) {
    check_tuple(tuple);
    if (k >= m_) throw IndexError("NAryStructure: output index out of range");
    const int sign = canonicalize_index(tuple);
    if (sign == 0 || value == 0) return;
    auto [it, inserted] = c_.try_emplace(tuple, RatVector(m_));
    it->second[k] += sign > 0 ? value : Rational(-value);
    if (std::all_of(it->second.begin(), it->second.end(), [](const Rational& x) { return x == 0; })) c_.erase(it);
  }

  Rational get(MultiIndex tuple, std::uint32_t k) const {
    check_tuple(tuple);
    if (k >= m_) throw IndexError("NAryStructure: output index out of range");
    const int sign = canonicalize_index(tuple);
    if (sign == 0) return 0;
    auto it = c_.find(tuple);
    if (it == c_.end()) return 0;
    return sign > 0 ? it->second[k] : Rational(-it->second[k]);
  }

  friend bool operator==(const NAryStructure& a, const NAryStructure& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.c_ == b.c_;
  }

  void check_tuple(const MultiIndex& tuple) const {
    if (tuple.size() != static_cast<std::size_t>(n_))
      throw ShapeError("NAryStructure: tuple of length " + std::to_string(tuple.size()) + " for arity " +
                       std::to_string(n_));
    for (auto i : tuple)
      if (i >= m_) throw IndexError("NAryStructure: basis index " + std::to_string(i) + " out of range");
  }

 private:
  int n_;
  std::size_t m_;
  std::map<MultiIndex, RatVector> c_;
};

inline RatVector bracket_apply(const NAryStructure& s, const MultiIndex& tuple) {
  s.check_tuple(tuple);
  MultiIndex sorted = tuple;
  const int sign = canonicalize_index(sorted);
  RatVector out(s.m());
  if (sign == 0) return out;
  auto it = s.constants().find(sorted);
  if (it == s.constants().end()) return out;
  for (std::size_t k = 0; k < s.m(); ++k) out[k] = sign > 0 ? it->second[k] : Rational(-it->second[k]);
  return out;
}

/// Multilinear extension of the bracket to arbitrary vectors.
inline RatVector bracket_vectors(const NAryStructure& s, const std::vector<RatVector>& args) {
  if (args.size() != static_cast<std::size_t>(s.n())) throw ShapeError("bracket_vectors: arity mismatch");
  for (const auto& a : args)
    if (a.size() != s.m()) throw DimensionError("bracket_vectors: vector length differs from dimension");
  RatVector out(s.m());
  MultiIndex idx(args.size());
  auto rec = [&](auto&& self, std::size_t slot, const Rational& coeff) -> void {
    if (slot == args.size()) {
      auto v = bracket_apply(s, idx);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += coeff * v[k];
      return;
    }
    for (std::uint32_t i = 0; i < s.m(); ++i) {
      if (args[slot][i] == 0) continue;
      if (std::find(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(slot), i) != idx.begin() + static_cast<std::ptrdiff_t>(slot))
        continue;
      idx[slot] = i;
      self(self, slot + 1, coeff * args[slot][i]);
    }
  };
  rec(rec, 0, Rational(1));
  return out;
}

inline RatVector unit_vector(std::size_t m, std::uint32_t i) {
  RatVector v(m);
  v[i] = 1;
  return v;
}

inline Poly linear_poly(const RatVector& v) {
  Poly p(v.size());
  for (std::uint32_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) p += v[k] * Poly::variable(v.size(), k);
  return p;
}

namespace detail {

/// [f, [g]] − Σ_i [g1..[f, g_i]..gn] on basis vectors.
inline RatVector structure_fi_residual(const NAryStructure& s, const MultiIndex& fs, const MultiIndex& gs) {
  std::vector<RatVector> outer;
  for (auto f : fs) outer.push_back(unit_vector(s.m(), f));
  outer.push_back(bracket_apply(s, gs));
  RatVector res = bracket_vectors(s, outer);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    MultiIndex inner = fs;
    inner.push_back(gs[i]);
    std::vector<RatVector> args;
    for (auto g : gs) args.push_back(unit_vector(s.m(), g));
    args[i] = bracket_apply(s, inner);
    auto term = bracket_vectors(s, args);
    for (std::size_t k = 0; k < res.size(); ++k) res[k] -= term[k];
  }
  return res;
}

inline bool is_zero_vector(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace detail

/// Fundamental identity on basis tuples: f over increasing (n−1)-tuples, g over increasing n-tuples.
/// Multilinearity in every slot makes the basis check complete.
inline CheckReport check_fundamental_identity(const NAryStructure& s, unsigned jobs = 1) {
  CheckReport r;
  r.check = "fundamental-identity";
  const auto ftuples = increasing_tuples(s.m(), static_cast<std::size_t>(s.n() - 1));
  const auto gtuples = increasing_tuples(s.m(), static_cast<std::size_t>(s.n()));
  const std::size_t count = ftuples.size() * gtuples.size();
  auto hit = find_first<RatVector>(count, jobs, [&](std::size_t t) -> std::optional<RatVector> {
    auto res = detail::structure_fi_residual(s, ftuples[t / gtuples.size()], gtuples[t % gtuples.size()]);
    if (detail::is_zero_vector(res)) return std::nullopt;
    return res;
  });
  if (hit) {
    const auto& [t, res] = *hit;
    Witness w;
    w.description = "fundamental identity fails on basis elements";
    w.inputs = {{"f", format_index(ftuples[t / gtuples.size()])}, {"g", format_index(gtuples[t % gtuples.size()])}};
    w.residual_term = format_poly(linear_poly(res));
    w.residual_at_point = w.residual_term;
    r.fail(std::move(w));
    r.stat("identities", t + 1);
  } else {
    r.stat("identities", count);
  }
  return r;
}

inline MultiVectorField linear_tensor_from_structure(const NAryStructure& s) {
  MultiVectorField out(s.m(), s.n());
  for (const auto& [tuple, v] : s.constants()) out.add_term(tuple, linear_poly(v));
  return out;
}

inline bool is_linear_tensor(const MultiVectorField& lambda) {
  for (const auto& [idx, c] : lambda.terms())
    for (const auto& [mono, coeff] : c.terms())
      if (total_degree(mono) != 1) return false;
  return true;
}

inline NAryStructure structure_from_linear_tensor(const MultiVectorField& lambda) {
  if (lambda.degree() < 1) throw ShapeError("structure_from_linear_tensor: degree must be at least 1");
  NAryStructure s(lambda.degree(), lambda.m());
  for (const auto& [idx, c] : lambda.terms()) {
    for (const auto& [mono, coeff] : c.terms()) {
      if (total_degree(mono) != 1)
        throw ShapeError("structure_from_linear_tensor: coefficient of " + format_index(idx) + " is not linear");
      const auto k = static_cast<std::uint32_t>(std::find(mono.begin(), mono.end(), 1u) - mono.begin());
      s.add(idx, k, coeff);
    }
  }
  return s;
}

/// Filippov identity for the tensor's bracket on coordinate functions, through polynomial Nambu brackets.
inline CheckReport fi_check_linear_functions(const MultiVectorField& lambda, unsigned jobs = 1) {
  if (!is_linear_tensor(lambda)) throw ShapeError("fi_check_linear_functions: coefficients must be linear");
  CheckReport r;
  r.check = "filippov-linear";
  const int n = lambda.degree();
  if (n < 1) throw ShapeError("fi_check_linear_functions: degree must be at least 1");
  const auto ftuples = increasing_tuples(lambda.m(), static_cast<std::size_t>(n - 1));
  const auto gtuples = increasing_tuples(lambda.m(), static_cast<std::size_t>(n));
  const std::size_t count = ftuples.size() * gtuples.size();
  auto hit = find_first<Poly>(count, jobs, [&](std::size_t t) -> std::optional<Poly> {
    auto fs = coordinate_functions(lambda.m(), ftuples[t / gtuples.size()]);
    auto gs = coordinate_functions(lambda.m(), gtuples[t % gtuples.size()]);
    auto res = filippov_residual(lambda, fs, gs);
    if (res.is_zero()) return std::nullopt;
    return res;
  });
  if (hit) {
    const auto& [t, res] = *hit;
    r.fail(residual_witness(
        "Filippov identity fails on coordinate functions",
        {{"f", format_index(ftuples[t / gtuples.size()])}, {"g", format_index(gtuples[t % gtuples.size()])}}, res));
    r.stat("identities", t + 1);
  } else {
    r.stat("identities", count);
  }
  return r;
}

inline NAryStructure direct_sum(const NAryStructure& a, const NAryStructure& b) {
  if (a.n() != b.n()) throw ShapeError("direct_sum: arities differ");
  NAryStructure out(a.n(), a.m() + b.m());
  for (const auto& [tuple, v] : a.constants())
    for (std::uint32_t k = 0; k < a.m(); ++k) out.add(tuple, k, v[k]);
  const auto shift = static_cast<std::uint32_t>(a.m());
  for (const auto& [tuple, v] : b.constants()) {
    MultiIndex t = tuple;
    for (auto& i : t) i += shift;
    for (std::uint32_t k = 0; k < b.m(); ++k) out.add(t, k + shift, v[k]);
  }
  return out;
}

inline Subspace derived_ideal(const NAryStructure& s) {
  std::vector<RatVector> values;
  for (const auto& [tuple, v] : s.constants()) values.push_back(v);
  return subspace_span(values, s.m());
}

inline bool is_ideal(const NAryStructure& s, const Subspace& w) {
  if (w.ambient() != s.m()) throw DimensionError("is_ideal: subspace lives in a different dimension");
  const auto others = increasing_tuples(s.m(), static_cast<std::size_t>(s.n() - 1));
  for (const auto& v : w.basis()) {
    for (const auto& t : others) {
      std::vector<RatVector> args;
      for (auto i : t) args.push_back(unit_vector(s.m(), i));
      args.push_back(v);
      if (!w.contains(bracket_vectors(s, args))) return false;
    }
  }
  return true;
}

/// Λ_g ∧ ∂_m ∧ … ∧ ∂_{m+k−1} on R^{m+k}, Λ_g the linear Poisson tensor of the Lie algebra g.
inline MultiVectorField example1_build(const NAryStructure& g, std::size_t k) {
  if (g.n() != 2) throw ShapeError("example1_build: expected a Lie algebra (arity 2)");
  if (k < 1) throw ShapeError("example1_build: k must be at least 1");
  const std::size_t m = g.m() + k;
  MultiIndex extra;
  for (std::size_t i = g.m(); i < m; ++i) extra.push_back(static_cast<std::uint32_t>(i));
  return wedge(embed(linear_tensor_from_structure(g), m, 0), basis_multivector(m, extra));
}

namespace fixtures {

inline NAryStructure so3() {
  NAryStructure s(2, 3);
  s.add({0, 1}, 2, 1);
  s.add({1, 2}, 0, 1);
  s.add({2, 0}, 1, 1);
  return s;
}

inline NAryStructure so4() { return direct_sum(so3(), so3()); }

inline NAryStructure heisenberg() {
  NAryStructure s(2, 3);
  s.add({0, 1}, 2, 1);
  return s;
}

inline NAryStructure abelian(std::size_t m, int n = 2) { return NAryStructure(n, m); }

}  // namespace fixtures

/// Linear map δ: Q^m → Λ^n Q^m; row i holds δ(e_i) in the basis of increasing n-tuples.
class CocycleMap {
 public:
  CocycleMap(int n, RatMatrix matrix) : n_(n), matrix_(std::move(matrix)) {
    if (n < 0) throw ShapeError("CocycleMap: negative degree");
    const auto cols = increasing_tuples(matrix_.rows(), static_cast<std::size_t>(n)).size();
    if (matrix_.cols() != cols)
      throw ShapeError("CocycleMap: expected " + std::to_string(cols) + " columns, got " +
                       std::to_string(matrix_.cols()));
  }

  static CocycleMap from_images(const std::vector<ConstMultiVector>& images, int n, std::size_t m) {
    if (images.size() != m) throw ShapeError("CocycleMap: need one image per basis vector");
    const auto tuples = increasing_tuples(m, static_cast<std::size_t>(n));
    RatMatrix mat(m, tuples.size());
    for (std::size_t i = 0; i < m; ++i) {
      if (images[i].m() != m || images[i].degree() != n) throw ShapeError("CocycleMap: image has the wrong shape");
      for (std::size_t c = 0; c < tuples.size(); ++c) {
        auto coeff = images[i].coefficient(tuples[c]);
        mat(i, c) = coeff;
      }
    }
    return CocycleMap(n, std::move(mat));
  }

  int n() const { return n_; }
  std::size_t m() const { return matrix_.rows(); }
  const RatMatrix& matrix() const { return matrix_; }

  ConstMultiVector image(std::uint32_t i) const {
    const auto tuples = increasing_tuples(m(), static_cast<std::size_t>(n_));
    ConstMultiVector out(m(), n_);
    for (std::size_t c = 0; c < tuples.size(); ++c)
      if (matrix_(i, c) != 0) out.add_term(tuples[c], matrix_(i, c));
    return out;
  }

 private:
  int n_;
  RatMatrix matrix_;
};

/// ad_{e_a} extended to Λ^p as a derivation of the wedge product.
inline ConstMultiVector ad_extended(const NAryStructure& g, std::uint32_t a, const ConstMultiVector& t) {
  ConstMultiVector out(t.m(), t.degree());
  for (const auto& [idx, c] : t.field().terms()) {
    const Rational coeff = c.constant_term();
    for (std::size_t s = 0; s < idx.size(); ++s) {
      auto v = bracket_apply(g, {a, idx[s]});
      for (std::uint32_t k = 0; k < g.m(); ++k) {
        if (v[k] == 0) continue;
        MultiIndex replaced = idx;
        replaced[s] = k;
        out.add_term(replaced, coeff * v[k]);
      }
    }
  }
  return out;
}

inline ConstMultiVector apply_cocycle(const CocycleMap& delta, const RatVector& x) {
  ConstMultiVector out(delta.m(), delta.n());
  for (std::uint32_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) out = out + x[i] * delta.image(i);
  return out;
}

/// δ([e_a, e_b]) = ad_{e_a} δ(e_b) − ad_{e_b} δ(e_a) for all a < b.
inline CheckReport adjoint_cocycle_check(const NAryStructure& g, const CocycleMap& delta) {
  if (g.n() != 2) throw ShapeError("adjoint_cocycle_check: expected a Lie algebra (arity 2)");
  if (g.m() != delta.m()) throw ShapeError("adjoint_cocycle_check: cocycle and algebra dimensions differ");
  CheckReport r;
  r.check = "cocycle";
  std::uint64_t checked = 0;
  for (std::uint32_t a = 0; a < g.m(); ++a) {
    for (std::uint32_t b = a + 1; b < g.m(); ++b) {
      ++checked;
      auto lhs = apply_cocycle(delta, bracket_apply(g, {a, b}));
      auto rhs = ad_extended(g, a, delta.image(b)) - ad_extended(g, b, delta.image(a));
      auto res = lhs - rhs;
      if (!res.is_zero()) {
        Witness w;
        w.description = "cocycle condition fails";
        w.inputs = {{"a", std::to_string(a)}, {"b", std::to_string(b)}};
        w.residual_term = format_tensor(res.field());
        w.residual_at_point = w.residual_term;
        r.fail(std::move(w));
        r.stat("pairs", checked);
        return r;
      }
    }
  }
  r.stat("pairs", checked);
  return r;
}

}  // namespace nambu
