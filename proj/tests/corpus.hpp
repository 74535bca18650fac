#pragma once

// Tensors shared by the unit suites and the acceptance binary. Coordinates are 0-based.

#include <string>
#include <vector>

#include "nambu/exterior.hpp"
#include "nambu/literal.hpp"

namespace corpus {

using nambu::MultiVectorField;

inline MultiVectorField term_sum(std::size_t m, int degree,
                                 std::initializer_list<std::pair<nambu::MultiIndex, const char*>> terms) {
  MultiVectorField t(m, degree);
  for (const auto& [idx, coeff] : terms) t.add_term(idx, nambu::parse_poly(coeff, m));
  return t;
}

/// ∂0∧∂1∧∂2 on R^3, the determinant bracket.
inline MultiVectorField det3() { return nambu::basis_multivector(3, {0, 1, 2}); }

/// Linear Poisson tensor of so(3).
inline MultiVectorField so3() { return term_sum(3, 2, {{{0, 1}, "x2"}, {{1, 2}, "x0"}, {{2, 0}, "x1"}}); }

/// so(3) ⊕ so(3) on R^6.
inline MultiVectorField so4() {
  return term_sum(6, 2,
                  {{{0, 1}, "x2"}, {{1, 2}, "x0"}, {{2, 0}, "x1"}, {{3, 4}, "x5"}, {{4, 5}, "x3"}, {{5, 3}, "x4"}});
}

/// Contraction of the Minkowski form's half-differential into the volume of R^4.
inline MultiVectorField poincare() {
  return term_sum(4, 3, {{{1, 2, 3}, "x0"}, {{0, 2, 3}, "x1"}, {{0, 1, 3}, "-x2"}, {{0, 1, 2}, "x3"}});
}

/// ∂0∧∂1∧(x0∂2 + x1∂3): decomposable, not involutive.
inline MultiVectorField decomposable_linear() { return term_sum(4, 3, {{{0, 1, 2}, "x0"}, {{0, 1, 3}, "x1"}}); }

/// ∂0∧∂1∧(∂2 + x0∂3): decomposable, but [∂0, ∂2 + x0∂3] = ∂3 leaves the span.
inline MultiVectorField non_involutive() { return term_sum(4, 3, {{{0, 1, 2}, "1"}, {{0, 1, 3}, "x0"}}); }

/// ∂0∧∂1 + ∂2∧∂3: constant, not decomposable.
inline MultiVectorField symplectic4() { return term_sum(4, 2, {{{0, 1}, "1"}, {{2, 3}, "1"}}); }

}  // namespace corpus
