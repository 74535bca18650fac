#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nambu/errors.hpp"
#include "nambu/rational.hpp"

namespace nambu {

using RatVector = std::vector<Rational>;

/// Dense row-major matrix of rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
    RatMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("from_rows: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const {
    return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form together with the pivot column of each nonzero row.
struct Echelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;
};

inline Echelon row_reduce(RatMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t mat_rank(const RatMatrix& m) { return row_reduce(m).pivots.size(); }

/// Basis of {v : m v = 0}.
inline std::vector<RatVector> nullspace(const RatMatrix& m) {
  auto [reduced, pivots] = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// A linear subspace of Q^dim stored as a reduced-echelon basis.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<RatVector>& basis() const { return basis_; }

  bool contains(const RatVector& v) const {
    if (v.size() != ambient_) throw DimensionError("contains: vector dimension mismatch");
    auto rows = basis_;
    rows.push_back(v);
    return mat_rank(RatMatrix::from_rows(rows, ambient_)) == basis_.size();
  }

  friend bool operator==(const Subspace&, const Subspace&) = default;

  friend Subspace subspace_span(const std::vector<RatVector>& vectors, std::size_t ambient);

 private:
  std::size_t ambient_;
  std::vector<RatVector> basis_;
};

/// Span of the given vectors; the basis is the nonzero rows of the RREF, hence canonical.
inline Subspace subspace_span(const std::vector<RatVector>& vectors, std::size_t ambient) {
  for (const auto& v : vectors)
    if (v.size() != ambient) throw DimensionError("subspace_span: vector dimension mismatch");
  Subspace s(ambient);
  if (vectors.empty()) return s;
  auto [reduced, pivots] = row_reduce(RatMatrix::from_rows(vectors, ambient));
  for (std::size_t r = 0; r < pivots.size(); ++r) s.basis_.push_back(reduced.row(r));
  return s;
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DimensionError("subspace_sum: ambient mismatch");
  auto rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return subspace_span(rows, a.ambient());
}

/// A ∩ B from the kernel of [A^T | -B^T]: each kernel vector (s, t) gives Σ s_i a_i ∈ A ∩ B.
inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DimensionError("subspace_intersect: ambient mismatch");
  const std::size_t n = a.ambient(), ka = a.dim(), kb = b.dim();
  RatMatrix system(n, ka + kb);
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t r = 0; r < n; ++r) system(r, i) = a.basis()[i][r];
  for (std::size_t j = 0; j < kb; ++j)
    for (std::size_t r = 0; r < n; ++r) system(r, ka + j) = -b.basis()[j][r];
  std::vector<RatVector> common;
  for (const auto& kv : nullspace(system)) {
    RatVector v(n);
    for (std::size_t i = 0; i < ka; ++i)
      for (std::size_t r = 0; r < n; ++r) v[r] += kv[i] * a.basis()[i][r];
    common.push_back(std::move(v));
  }
  return subspace_span(common, n);
}

}  // namespace nambu
