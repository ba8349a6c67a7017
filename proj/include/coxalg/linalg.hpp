#pragma once

#include "coxalg/scalar.hpp"

#include <optional>
#include <vector>

namespace coxalg {

// Reduced row echelon form of an exact rational matrix, together with the
// pivot columns. Pivoting picks the first nonzero entry of each column; over
// an exact field any nonzero pivot is as good as any other, and this choice
// makes the output reproducible.
struct RrefResult {
  QMat r;
  std::vector<Index> pivots;
  Index rank = 0;
};

template <typename Derived>
RrefResult rref(const Eigen::MatrixBase<Derived>& m_in) {
  RrefResult out;
  QMat& m = out.r;
  m = m_in;
  const Index rows = m.rows(), cols = m.cols();
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index pivot = -1;
    for (Index i = row; i < rows; ++i) {
      if (m(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    m.row(row) /= m(row, col);
    for (Index i = 0; i < rows; ++i) {
      if (i != row && m(i, col) != 0) m.row(i) -= m(i, col) * m.row(row);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = row;
  return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return rref(m).rank;
}

// Columns form a basis of { v : Mv = 0 }. One basis column per free column
// of the RREF, in increasing free-column order.
template <typename Derived>
QMat kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  const RrefResult re = rref(m);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (Index p : re.pivots) is_pivot[static_cast<size_t>(p)] = true;
  QMat basis = QMat::Zero(cols, cols - re.rank);
  Index k = 0;
  for (Index j = 0; j < cols; ++j) {
    if (is_pivot[static_cast<size_t>(j)]) continue;
    basis(j, k) = 1;
    for (Index i = 0; i < re.rank; ++i) basis(re.pivots[static_cast<size_t>(i)], k) = -re.r(i, j);
    ++k;
  }
  return basis;
}

// Basis of { v : v^T M = 0 }, given as columns.
template <typename Derived>
QMat left_kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  return kernel_basis(m.transpose());
}

// Subtracts the row-space component spanned by an RREF; the result is zero
// iff v lies in the row space.
inline QVec reduce_by_rref(const RrefResult& re, QVec v) {
  for (Index i = 0; i < re.rank; ++i) {
    const Index p = re.pivots[static_cast<size_t>(i)];
    if (v(p) != 0) v -= v(p) * re.r.row(i).transpose();
  }
  return v;
}

inline bool in_row_space(const RrefResult& re, const QVec& v) {
  return reduce_by_rref(re, v).isZero(0);
}

// Exact determinant by fraction-producing Gaussian elimination.
template <typename Derived>
Rational det(const Eigen::MatrixBase<Derived>& m_in) {
  QMat m = m_in;
  const Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("det of non-square matrix");
  Rational d = 1;
  for (Index col = 0; col < n; ++col) {
    Index pivot = -1;
    for (Index i = col; i < n; ++i) {
      if (m(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      d = -d;
    }
    d *= m(col, col);
    for (Index i = col + 1; i < n; ++i) {
      if (m(i, col) != 0) m.row(i) -= (m(i, col) / m(col, col)) * m.row(col);
    }
  }
  return d;
}

// Solves Ax = b exactly; returns an empty optional when inconsistent. When
// the system is underdetermined an arbitrary (deterministic) solution is
// produced: free variables are set to zero.
template <typename Derived>
std::optional<QVec> solve(const Eigen::MatrixBase<Derived>& a, const QVec& b) {
  QMat aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const RrefResult re = rref(aug);
  if (!re.pivots.empty() && re.pivots.back() == a.cols()) return std::nullopt;
  QVec x = QVec::Zero(a.cols());
  for (Index i = 0; i < re.rank; ++i) x(re.pivots[static_cast<size_t>(i)]) = re.r(i, a.cols());
  return x;
}

}  // namespace coxalg
