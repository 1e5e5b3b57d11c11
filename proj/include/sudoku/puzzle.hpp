#ifndef SUDOKU_PUZZLE_HPP
#define SUDOKU_PUZZLE_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sudoku/matrix.hpp"
#include "sudoku/permutation.hpp"

namespace sudoku {

/// The n constraint sets cs_pi(1..n), each of size n, sorted ascending.
using ConstraintSetSystem = std::vector<std::vector<int>>;

/// cs_pi(j) = { pi(i) | (j-1)n+1 <= i <= jn } for j = 1..n.
inline ConstraintSetSystem constraint_sets(const Permutation& pi, int n) {
  if (pi.degree() != n * n)
    throw std::invalid_argument("constraint_sets: permutation degree != n^2");
  ConstraintSetSystem sets(n);
  for (int j = 1; j <= n; ++j) {
    sets[j - 1].reserve(n);
    for (int i = (j - 1) * n + 1; i <= j * n; ++i) sets[j - 1].push_back(pi(i));
    std::sort(sets[j - 1].begin(), sets[j - 1].end());
  }
  return sets;
}

/// Populated cells: pairs (cell, value), cells pairwise distinct.
class Givens {
public:
  Givens() = default;
  Givens(std::vector<std::pair<int, int>> pairs, int n) : pairs_(std::move(pairs)) {
    std::vector<bool> seen(n * n, false);
    for (auto [cell, value] : pairs_) {
      if (cell < 1 || cell > n * n) throw std::invalid_argument("given cell out of range");
      if (value < 1 || value > n) throw std::invalid_argument("given value out of range");
      if (seen[cell - 1]) throw std::invalid_argument("duplicate given cell");
      seen[cell - 1] = true;
    }
  }

  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  std::size_t count() const { return pairs_.size(); }

  bool contains(int cell) const {
    for (auto [c, v] : pairs_)
      if (c == cell) return true;
    return false;
  }

private:
  std::vector<std::pair<int, int>> pairs_;
};

/// A generalized Sudoku instance: order n, three permutations of {1..n^2}
/// and the givens. Immutable after construction; constraint sets, cell->set
/// lookup tables and the column-permuted block matrices are precomputed.
class Puzzle {
public:
  Puzzle(int n, Permutation pi1, Permutation pi2, Permutation pi3, Givens givens = {})
      : n_(n), pi_{std::move(pi1), std::move(pi2), std::move(pi3)}, givens_(std::move(givens)) {
    if (n < 2) throw std::invalid_argument("generalized Sudoku problem requires n >= 2");
    for (const auto& pi : pi_)
      if (pi.degree() != n * n)
        throw std::invalid_argument("permutation degree != n^2");
    for (int r = 0; r < 3; ++r) {
      sets_[r] = constraint_sets(pi_[r], n_);
      cell_set_[r].assign(n_ * n_, 0);
      for (int j = 1; j <= n_; ++j)
        for (int cell : sets_[r][j - 1]) cell_set_[r][cell - 1] = j;
    }
  }

  int order() const { return n_; }
  int cell_count() const { return n_ * n_; }
  const Permutation& pi(int r) const { return pi_[r - 1]; }
  const Givens& givens() const { return givens_; }

  const ConstraintSetSystem& sets(int r) const { return sets_[r - 1]; }

  /// Index j with cell in cs_{pi_r}(j).
  int set_of(int r, int cell) const { return cell_set_[r - 1][cell - 1]; }

  /// A_{pi_r}; built on first use and cached.
  const ConstraintMatrix& matrix(int r) const {
    auto& slot = matrices_[r - 1];
    if (!slot) slot = permute_columns(build_block_A(n_), pi_[r - 1]);
    return *slot;
  }

  Puzzle with_givens(Givens g) const {
    return Puzzle(n_, pi_[0], pi_[1], pi_[2], std::move(g));
  }

private:
  int n_;
  std::array<Permutation, 3> pi_;
  Givens givens_;
  std::array<ConstraintSetSystem, 3> sets_;
  std::array<std::vector<int>, 3> cell_set_;
  mutable std::array<std::optional<ConstraintMatrix>, 3> matrices_;
};

/// Row/column/block permutations of the classical puzzle with n = m^2:
/// the constraint sets of pi1 are the rows of a row-major n x n grid,
/// those of pi2 the columns and those of pi3 the m x m blocks in
/// row-major block order. pi1 is the identity.
inline std::array<Permutation, 3> classical_permutations(int m) {
  if (m < 1) throw std::invalid_argument("classical_permutations: m >= 1 required");
  int n = m * m;
  int cells = n * n;
  std::vector<int> p2(cells), p3(cells);
  for (int j = 1; j <= n; ++j)
    for (int t = 1; t <= n; ++t) {
      int i = (j - 1) * n + t;
      p2[i - 1] = j + (t - 1) * n;
      int br = (j - 1) / m, bc = (j - 1) % m;
      int lr = (t - 1) / m, lc = (t - 1) % m;
      p3[i - 1] = (br * m + lr) * n + bc * m + lc + 1;
    }
  return {Permutation::identity(cells), Permutation(std::move(p2)),
          Permutation(std::move(p3))};
}

/// Classical puzzle of block size m with no givens.
inline Puzzle classical_puzzle(int m) {
  auto p = classical_permutations(m);
  return Puzzle(m * m, std::move(p[0]), std::move(p[1]), std::move(p[2]));
}

}  // namespace sudoku

#endif
