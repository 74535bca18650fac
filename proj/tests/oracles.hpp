#pragma once

// Test-only reference computations. Each oracle follows a different route from
// the library code it checks (closed-form coordinate formulas, permutation
// expansions), so agreement is evidence rather than tautology.

#include <algorithm>
#include <numeric>
#include <vector>

#include "nambu/exterior.hpp"
#include "nambu/literal.hpp"
#include "nambu/poly.hpp"

namespace oracle {

using nambu::MultiIndex;
using nambu::MultiVectorField;
using nambu::Poly;
using nambu::Rational;

inline Poly P(std::string_view text, std::size_t nvars) { return nambu::parse_poly(text, nvars); }

inline int permutation_sign(const std::vector<std::size_t>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) sign = -sign;
  return sign;
}

/// det(∂f_i/∂x_j) over the first k = |fs| coordinates by the Leibniz permutation expansion,
/// restricted to the coordinate directions `dirs`.
inline Poly jacobian_determinant(const std::vector<Poly>& fs, const std::vector<std::size_t>& dirs) {
  const std::size_t k = fs.size();
  const std::size_t nvars = fs.front().nvars();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Poly det(nvars);
  do {
    Poly term = Poly::constant(nvars, permutation_sign(perm));
    for (std::size_t i = 0; i < k && !term.is_zero(); ++i) term = term * fs[i].partial(dirs[perm[i]]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

/// Closed-form coordinate expression of the Schouten bracket on monomial terms:
/// [f∂_I, g∂_J] = Σ_a (-1)^{p-a} f ∂_{i_a}g ∂_{I∖i_a}∧∂_J − Σ_b (-1)^{b+1} g ∂_{j_b}f ∂_I∧∂_{J∖j_b}.
inline MultiVectorField schouten_closed_form(const MultiVectorField& a, const MultiVectorField& b) {
  const std::size_t m = a.m();
  const int p = a.degree(), q = b.degree();
  MultiVectorField out(m, p + q - 1);
  for (const auto& [ia, f] : a.terms()) {
    for (const auto& [ib, g] : b.terms()) {
      for (std::size_t s = 0; s < ia.size(); ++s) {
        MultiIndex idx;
        for (std::size_t t = 0; t < ia.size(); ++t)
          if (t != s) idx.push_back(ia[t]);
        idx.insert(idx.end(), ib.begin(), ib.end());
        Poly c = f * g.partial(ia[s]);
        // (-1)^{p-a} with a = s+1
        out.add_term(idx, (p - static_cast<int>(s) - 1) % 2 == 0 ? c : -c);
      }
      for (std::size_t s = 0; s < ib.size(); ++s) {
        MultiIndex idx = ia;
        for (std::size_t t = 0; t < ib.size(); ++t)
          if (t != s) idx.push_back(ib[t]);
        Poly c = g * f.partial(ib[s]);
        // −(−1)^{b+1} with b = s+1 is (−1)^{s+1}
        out.add_term(idx, s % 2 == 1 ? c : -c);
      }
    }
  }
  return out;
}

/// Tensor-calculus Lie derivative of a multivector along X:
/// (L_X A)^{i1..ip} = X(A^{i1..ip}) − Σ_k Σ_j A^{i1..j..ip} ∂_j X^{ik}.
inline MultiVectorField lie_derivative_components(const MultiVectorField& x, const MultiVectorField& a) {
  const std::size_t m = a.m();
  MultiVectorField out(m, a.degree());
  for (const auto& [idx, c] : a.terms()) {
    out.add_term(idx, nambu::apply_field(x, c));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      // A^{..j..} ∂_j X^{i} contributes −A^{..j..}∂_jX^i to the component with j replaced by i
      for (std::uint32_t i = 0; i < m; ++i) {
        Poly dx = x.component(i).partial(idx[k]);
        if (dx.is_zero()) continue;
        MultiIndex replaced = idx;
        replaced[k] = i;
        out.add_term(replaced, -(c * dx));
      }
    }
  }
  return out;
}

}  // namespace oracle
