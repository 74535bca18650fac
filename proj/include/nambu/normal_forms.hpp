#pragma once

// Generators for the four families of linear Nambu-Poisson tensors of order n > 2.
// Coordinates are x0..x_{m-1}; the "leading block" of families B is x0..xn.

#include <string>
#include <vector>

#include "nambu/exterior.hpp"
#include "nambu/linalg.hpp"
#include "nambu/sampling.hpp"

namespace nambu {

namespace detail {

inline MultiIndex leading(std::size_t count) {
  MultiIndex idx(count);
  for (std::size_t i = 0; i < count; ++i) idx[i] = static_cast<std::uint32_t>(i);
  return idx;
}

inline void require_homogeneous(const Poly& p, int degree, const char* what) {
  for (const auto& [mono, c] : p.terms())
    if (static_cast<int>(total_degree(mono)) != degree)
      throw ShapeError(std::string(what) + " must be homogeneous of degree " + std::to_string(degree));
}

}  // namespace detail

/// φ ∂0∧…∧∂_{n−1} with φ linear.
inline MultiVectorField normal_form_A(int n, std::size_t m, const Poly& phi) {
  if (n < 1 || static_cast<std::size_t>(n) > m) throw ShapeError("normal_form_A: need 1 <= n <= m");
  if (phi.nvars() != m) throw DimensionError("normal_form_A: phi has the wrong number of variables");
  detail::require_homogeneous(phi, 1, "normal_form_A: phi");
  return MultiVectorField::basis(m, detail::leading(static_cast<std::size_t>(n)), phi);
}

/// ∂0∧…∧∂_{n−2}∧V with V = Σ a_ij x_i ∂_j over i, j ≥ n−1; `a` is (m−n+1) × (m−n+1).
inline MultiVectorField normal_form_C(int n, std::size_t m, const RatMatrix& a) {
  if (n < 1 || static_cast<std::size_t>(n) > m) throw ShapeError("normal_form_C: need 1 <= n <= m");
  const std::size_t tail = m - static_cast<std::size_t>(n) + 1;
  if (a.rows() != tail || a.cols() != tail)
    throw ShapeError("normal_form_C: coefficient matrix must be " + std::to_string(tail) + "x" + std::to_string(tail));
  const auto first = static_cast<std::uint32_t>(n - 1);
  MultiVectorField v(m, 1);
  for (std::uint32_t i = 0; i < tail; ++i)
    for (std::uint32_t j = 0; j < tail; ++j)
      if (a(i, j) != 0) v.add_term({first + j}, a(i, j) * Poly::variable(m, first + i));
  return wedge(MultiVectorField::basis(m, detail::leading(static_cast<std::size_t>(n - 1))), v);
}

/// α = dφ + Σ a_ij x_i dx_j over transverse i ≥ n+1 and leading j ≤ n; `a` is (m−n−1) × (n+1),
/// φ homogeneous quadratic in x0..xn.
inline DiffForm normal_form_alpha_B1(int n, std::size_t m, const Poly& phi, const RatMatrix& a) {
  if (n < 1 || static_cast<std::size_t>(n) + 1 > m) throw ShapeError("normal_form_B1: need 1 <= n < m");
  if (phi.nvars() != m) throw DimensionError("normal_form_B1: phi has the wrong number of variables");
  detail::require_homogeneous(phi, 2, "normal_form_B1: phi");
  if (!phi.depends_only_on(0, static_cast<std::size_t>(n) + 1))
    throw ShapeError("normal_form_B1: phi may only involve x0..x" + std::to_string(n));
  const std::size_t lead = static_cast<std::size_t>(n) + 1;
  if (a.rows() != m - lead || a.cols() != lead)
    throw ShapeError("normal_form_B1: coefficient matrix must be " + std::to_string(m - lead) + "x" +
                     std::to_string(lead));
  DiffForm alpha = differential(phi);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::uint32_t j = 0; j < lead; ++j)
      if (a(i, j) != 0)
        alpha.add_term({j}, a(i, j) * Poly::variable(m, static_cast<std::uint32_t>(lead + i)));
  return alpha;
}

/// α = dφ + ½((x0 + Σ a_i x_i) dx1 − (x1 + Σ b_j x_j) dx0) over transverse i, j ≥ n+1,
/// φ homogeneous quadratic in x0, x1; `a` and `b` have length m−n−1.
inline DiffForm normal_form_alpha_B2(int n, std::size_t m, const Poly& phi, const RatVector& a, const RatVector& b) {
  if (n < 1 || static_cast<std::size_t>(n) + 1 > m) throw ShapeError("normal_form_B2: need 1 <= n < m");
  if (phi.nvars() != m) throw DimensionError("normal_form_B2: phi has the wrong number of variables");
  detail::require_homogeneous(phi, 2, "normal_form_B2: phi");
  if (!phi.depends_only_on(0, 2)) throw ShapeError("normal_form_B2: phi may only involve x0, x1");
  const std::size_t lead = static_cast<std::size_t>(n) + 1;
  if (a.size() != m - lead || b.size() != m - lead)
    throw ShapeError("normal_form_B2: a and b must have length " + std::to_string(m - lead));
  Poly p = Poly::variable(m, 0), q = Poly::variable(m, 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    p += a[i] * Poly::variable(m, static_cast<std::uint32_t>(lead + i));
    q += b[i] * Poly::variable(m, static_cast<std::uint32_t>(lead + i));
  }
  const Rational half(1, 2);
  DiffForm alpha = differential(phi);
  alpha.add_term({1}, half * p);
  alpha.add_term({0}, -(half * q));
  return alpha;
}

/// The pullback of a form to the leading coordinates x0..x_{k−1}: other variables set to 0, other dx dropped.
inline DiffForm restrict_to_leading(const DiffForm& omega, std::size_t k) {
  if (k > omega.m()) throw DimensionError("restrict_to_leading: k exceeds the dimension");
  DiffForm out(k, omega.degree());
  for (const auto& [idx, c] : omega.terms()) {
    if (!idx.empty() && idx.back() >= k) continue;
    Poly restricted(k);
    for (const auto& [mono, coeff] : c.terms()) {
      bool keep = true;
      for (std::size_t v = k; v < mono.size(); ++v)
        if (mono[v] != 0) keep = false;
      if (keep) restricted.add_term(Monomial(mono.begin(), mono.begin() + static_cast<std::ptrdiff_t>(k)), coeff);
    }
    out.add_term(idx, restricted);
  }
  return out;
}

/// i_α(∂0∧…∧∂n).
inline MultiVectorField normal_form_from_alpha(int n, const DiffForm& alpha) {
  return contract_once(alpha, MultiVectorField::basis(alpha.m(), detail::leading(static_cast<std::size_t>(n) + 1)));
}

inline MultiVectorField normal_form_B1(int n, std::size_t m, const Poly& phi, const RatMatrix& a) {
  auto alpha = normal_form_alpha_B1(n, m, phi, a);
  if (!exterior_derivative(restrict_to_leading(alpha, static_cast<std::size_t>(n) + 1)).is_zero())
    throw TheoremViolation("normal_form_B1: restricted alpha is not closed");
  return normal_form_from_alpha(n, alpha);
}

inline MultiVectorField normal_form_B2(int n, std::size_t m, const Poly& phi, const RatVector& a, const RatVector& b) {
  auto alpha = normal_form_alpha_B2(n, m, phi, a, b);
  auto d = exterior_derivative(restrict_to_leading(alpha, static_cast<std::size_t>(n) + 1));
  std::vector<Rational> origin(static_cast<std::size_t>(n) + 1, Rational(0));
  if (d.coefficient({0, 1}).evaluate(origin) == 0)
    throw TheoremViolation("normal_form_B2: restricted d(alpha) vanishes at the origin");
  return normal_form_from_alpha(n, alpha);
}

/// Parameters of one normal-form draw, kept so a generated tensor can be reproduced and reported.
struct NormalFormParams {
  std::string family;  // "A", "B1", "B2" or "C"
  int n = 3;
  std::size_t m = 3;
  Poly phi;
  RatMatrix matrix;
  RatVector a, b;

  friend bool operator==(const NormalFormParams&, const NormalFormParams&) = default;
};

inline MultiVectorField build_normal_form(const NormalFormParams& p) {
  if (p.family == "A") return normal_form_A(p.n, p.m, p.phi);
  if (p.family == "C") return normal_form_C(p.n, p.m, p.matrix);
  if (p.family == "B1") return normal_form_B1(p.n, p.m, p.phi, p.matrix);
  if (p.family == "B2") return normal_form_B2(p.n, p.m, p.phi, p.a, p.b);
  throw ShapeError("unknown normal-form family '" + p.family + "'");
}

/// Seeded parameters with small integer entries in [−3, 3].
inline NormalFormParams random_normal_form_params(const std::string& family, int n, std::size_t m, Sampler& rng) {
  NormalFormParams p;
  p.family = family;
  p.n = n;
  p.m = m;
  p.phi = Poly(m);
  auto small = [&] { return Rational(rng.uniform(-3, 3)); };
  auto random_matrix = [&](std::size_t rows, std::size_t cols) {
    RatMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) out(i, j) = small();
    return out;
  };
  auto quadratic_in = [&](std::size_t vars) {
    Poly q(m);
    for (std::uint32_t i = 0; i < vars; ++i)
      for (std::uint32_t j = i; j < vars; ++j)
        q += small() * Poly::variable(m, i) * Poly::variable(m, j);
    return q;
  };
  const std::size_t lead = static_cast<std::size_t>(n) + 1;
  if (family == "A") {
    for (std::uint32_t i = 0; i < m; ++i) p.phi += small() * Poly::variable(m, i);
  } else if (family == "C") {
    p.matrix = random_matrix(m - static_cast<std::size_t>(n) + 1, m - static_cast<std::size_t>(n) + 1);
  } else if (family == "B1") {
    p.phi = quadratic_in(lead);
    p.matrix = random_matrix(m - lead, lead);
  } else if (family == "B2") {
    p.phi = quadratic_in(2);
    p.a.resize(m - lead);
    p.b.resize(m - lead);
    for (auto& x : p.a) x = small();
    for (auto& x : p.b) x = small();
  } else {
    throw ShapeError("unknown normal-form family '" + family + "'");
  }
  return p;
}

}  // namespace nambu
