#pragma once

#include "fullmod/polynomial.hpp"
#include "fullmod/scalar.hpp"

#include <utility>

namespace fullmod {

/// Fraction-free (Bareiss) determinant. Exact for Integer and Rational.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  const Index n = input.rows();
  if (n != input.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  if (n == 0) return Scalar(1);
  Matrix<Scalar> a = input;
  Scalar sign = 1;
  Scalar prev = 1;
  for (Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Index swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return Scalar(0);
      a.row(k).swap(a.row(swap));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Reduced row echelon form over Q. Returns the pivot columns.
inline std::vector<Index> row_reduce(RatMatrix& a) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    a.row(row).swap(a.row(p));
    Rational inv = Rational(1) / a(row, col);
    for (Index j = 0; j < a.cols(); ++j) a(row, j) *= inv;
    for (Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (Index j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  RatMatrix a = to_rational(m);
  return static_cast<Index>(row_reduce(a).size());
}

/// Columns form a basis of the rational null space {x : m x = 0}.
template <typename Derived>
RatMatrix rational_kernel(const Eigen::MatrixBase<Derived>& m) {
  RatMatrix a = to_rational(m);
  auto pivots = row_reduce(a);
  const Index n = a.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (Index p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  RatMatrix basis(n, n - static_cast<Index>(pivots.size()));
  Index out = 0;
  for (Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    RatVector v = RatVector::Zero(n);
    v(free) = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v(pivots[r]) = -a(static_cast<Index>(r), free);
    basis.col(out++) = v;
  }
  return basis;
}

/// Rows span the annihilator {y : y^T m = 0} of the column space of `m`.
template <typename Derived>
RatMatrix left_annihilator(const Eigen::MatrixBase<Derived>& m) {
  return rational_kernel(m.transpose()).transpose();
}

/// Solves a x = b for square invertible `a` (columns of b solved jointly).
inline RatMatrix solve_square(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows())
    throw DimensionMismatch("solve_square: shape mismatch");
  RatMatrix aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  auto pivots = row_reduce(aug);
  if (static_cast<Index>(pivots.size()) != a.rows() ||
      (!pivots.empty() && pivots.back() >= a.cols()))
    throw PreconditionError("solve_square: singular matrix");
  return aug.rightCols(b.cols());
}

/// Characteristic polynomial det(x I - m) by Faddeev-LeVerrier (exact over Q).
template <typename Derived>
RatPoly characteristic_polynomial(const Eigen::MatrixBase<Derived>& input) {
  const Index n = input.rows();
  RatMatrix a = to_rational(input);
  std::vector<Rational> c(static_cast<size_t>(n) + 1, Rational(0));
  c[static_cast<size_t>(n)] = 1;
  RatMatrix mk = RatMatrix::Zero(n, n);
  RatMatrix identity = RatMatrix::Identity(n, n);
  for (Index k = 1; k <= n; ++k) {
    mk = a * mk + c[static_cast<size_t>(n - k + 1)] * identity;
    RatMatrix amk = a * mk;
    c[static_cast<size_t>(n - k)] = -amk.trace() / Rational(k);
  }
  return RatPoly(std::move(c));
}

}  // namespace fullmod
