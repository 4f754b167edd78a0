#pragma once

// Exact dense linear algebra over a field scalar (Rational in practice).
// Eigen's decompositions pick pivots by magnitude and assume floating point
// round-off; these routines pivot on exact nonzeros instead.

#include <optional>
#include <utility>

#include "qloop/scalar.hpp"

namespace qloop {

/// Gauss-Jordan inverse. Returns nullopt iff the matrix is singular.
template <typename Derived>
std::optional<Matrix<typename Derived::Scalar>> exact_inverse(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = input.rows();
  if (input.cols() != n) return std::nullopt;
  Matrix<Scalar> a = input;
  Matrix<Scalar> inv = Matrix<Scalar>::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && a(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      inv.row(pivot).swap(inv.row(col));
    }
    const Scalar p = a(col, col);
    a.row(col) /= p;
    inv.row(col) /= p;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || a(r, col) == Scalar(0)) continue;
      const Scalar f = a(r, col);
      a.row(r) -= f * a.row(col);
      inv.row(r) -= f * inv.row(col);
    }
  }
  return inv;
}

/// Solves a x = b exactly; nullopt when a is singular.
template <typename Derived, typename RhsDerived>
std::optional<Vector<typename Derived::Scalar>> exact_solve(const Eigen::MatrixBase<Derived>& a,
                                                             const Eigen::MatrixBase<RhsDerived>& b) {
  auto inv = exact_inverse(a);
  if (!inv) return std::nullopt;
  return Vector<typename Derived::Scalar>(*inv * b);
}

/// Unpivoted L D L^T of a symmetric matrix: a = L diag(d) L^T with L unit
/// lower triangular. `complete` is false when a zero pivot stops the
/// factorization; `positive_definite` holds iff every pivot is > 0.
template <typename Scalar>
struct LdltFactors {
  Matrix<Scalar> lower;
  Vector<Scalar> pivots;
  bool complete = true;
  bool positive_definite = true;
};

template <typename Derived>
LdltFactors<typename Derived::Scalar> exact_ldlt(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = input.rows();
  LdltFactors<Scalar> out;
  out.lower = Matrix<Scalar>::Identity(n, n);
  out.pivots = Vector<Scalar>::Zero(n);
  Matrix<Scalar> work = input;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Scalar pivot = work(k, k);
    out.pivots(k) = pivot;
    if (pivot <= Scalar(0)) out.positive_definite = false;
    if (pivot == Scalar(0)) {
      out.complete = false;
      return out;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) out.lower(i, k) = work(i, k) / pivot;
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) work(i, j) -= out.lower(i, k) * work(k, j);
  }
  return out;
}

template <typename Derived>
bool is_positive_definite(const Eigen::MatrixBase<Derived>& symmetric) {
  const auto f = exact_ldlt(symmetric);
  return f.complete && f.positive_definite;
}

/// Kronecker product a (x) b, block (i, j) = a(i, j) * b.
template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> kronecker(const Eigen::MatrixBase<DerivedA>& a,
                                            const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Symmetric part (m + m^T) / 2.
template <typename Derived>
Matrix<typename Derived::Scalar> symmetric_part(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> t = m.transpose();
  return (Matrix<Scalar>(m) + t) / Scalar(2);
}

}  // namespace qloop
