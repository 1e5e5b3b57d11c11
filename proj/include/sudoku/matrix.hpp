#ifndef SUDOKU_MATRIX_HPP
#define SUDOKU_MATRIX_HPP

#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "sudoku/permutation.hpp"

namespace sudoku {

/// Sparse integer matrix with entries in {-1, 0, +1}.
using ConstraintMatrix = Eigen::SparseMatrix<int, Eigen::RowMajor>;

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer overflow");
  return r;
}

/// s(n) = n(n-1)/2, the row count of the pairwise-difference matrix.
inline long long pair_count(int n) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  return checked_mul(n, n - 1) / 2;
}

/// Pairwise-difference matrix with s(n) rows and n columns. Row (a,b),
/// a < b in lexicographic order, is +1 at column a and -1 at column b;
/// the base case is the 0 x 1 empty matrix.
inline ConstraintMatrix build_A(int n) {
  long long rows = pair_count(n);
  ConstraintMatrix A(static_cast<int>(rows), n);
  std::vector<Eigen::Triplet<int>> trip;
  trip.reserve(static_cast<std::size_t>(2 * rows));
  int r = 0;
  for (int a = 1; a < n; ++a)
    for (int b = a + 1; b <= n; ++b, ++r) {
      trip.emplace_back(r, a - 1, 1);
      trip.emplace_back(r, b - 1, -1);
    }
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

/// Block-diagonal stack of n copies of build_A(n): n*s(n) rows, n^2 columns.
inline ConstraintMatrix build_block_A(int n) {
  long long s = pair_count(n);
  long long rows = checked_mul(n, s);
  long long cols = checked_mul(n, n);
  ConstraintMatrix A(static_cast<int>(rows), static_cast<int>(cols));
  std::vector<Eigen::Triplet<int>> trip;
  trip.reserve(static_cast<std::size_t>(2 * rows));
  int r = 0;
  for (int block = 0; block < n; ++block) {
    int off = block * n;
    for (int a = 1; a < n; ++a)
      for (int b = a + 1; b <= n; ++b, ++r) {
        trip.emplace_back(r, off + a - 1, 1);
        trip.emplace_back(r, off + b - 1, -1);
      }
  }
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

/// Column permutation A_pi: column j of the result is column pi^{-1}(j) of A,
/// i.e. column c of A lands at column pi(c).
inline ConstraintMatrix permute_columns(const ConstraintMatrix& A, const Permutation& pi) {
  if (A.cols() != pi.degree())
    throw std::invalid_argument("permute_columns: dimension mismatch");
  std::vector<Eigen::Triplet<int>> trip;
  trip.reserve(static_cast<std::size_t>(A.nonZeros()));
  for (int r = 0; r < A.outerSize(); ++r)
    for (ConstraintMatrix::InnerIterator it(A, r); it; ++it)
      trip.emplace_back(static_cast<int>(it.row()), pi(static_cast<int>(it.col()) + 1) - 1,
                        it.value());
  ConstraintMatrix B(A.rows(), A.cols());
  B.setFromTriplets(trip.begin(), trip.end());
  return B;
}

/// y <> 0: every component nonzero. Vacuously true for the empty vector.
template <typename Derived>
inline bool all_nonzero(const Eigen::MatrixBase<Derived>& y) {
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y[i] == 0) return false;
  return true;
}

}  // namespace sudoku

#endif
