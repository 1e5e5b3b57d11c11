#include <doctest.h>

#include <vector>

#include "sudoku/matrix.hpp"
#include "sudoku/permutation.hpp"
#include "sudoku/puzzle.hpp"
#include "corpus.hpp"

using namespace sudoku;

namespace {

Eigen::MatrixXi dense(const ConstraintMatrix& A) { return Eigen::MatrixXi(A); }

// random permutation from a seeded generator
Permutation random_perm(corpus::Rng& rng, int degree) {
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 1);
  for (int i = degree - 1; i > 0; --i) std::swap(img[i], img[rng.below(i + 1)]);
  return Permutation(std::move(img));
}

bool pairwise_distinct(const Eigen::VectorXi& x) {
  for (int i = 0; i < x.size(); ++i)
    for (int j = i + 1; j < x.size(); ++j)
      if (x[i] == x[j]) return false;
  return true;
}

}  // namespace

TEST_CASE("build_A base cases and recursion") {
  ConstraintMatrix A1 = build_A(1);
  CHECK(A1.rows() == 0);
  CHECK(A1.cols() == 1);

  Eigen::MatrixXi A2 = dense(build_A(2));
  CHECK(A2.rows() == 1);
  CHECK(A2(0, 0) == 1);
  CHECK(A2(0, 1) == -1);

  Eigen::MatrixXi A3 = dense(build_A(3));
  Eigen::MatrixXi expected(3, 3);
  expected << 1, -1, 0, 1, 0, -1, 0, 1, -1;
  CHECK(A3 == expected);

  for (int n = 1; n <= 12; ++n) CHECK(build_A(n).rows() == n * (n - 1) / 2);
  CHECK_THROWS_AS(build_A(0), std::invalid_argument);
  CHECK_THROWS_AS(build_A(-3), std::invalid_argument);
}

TEST_CASE("build_block_A places copies of A(n) on the diagonal") {
  Eigen::MatrixXi A = dense(build_block_A(2));
  Eigen::MatrixXi expected(2, 4);
  expected << 1, -1, 0, 0, 0, 0, 1, -1;
  CHECK(A == expected);

  CHECK(build_block_A(1).rows() == 0);
  CHECK(build_block_A(1).cols() == 1);

  ConstraintMatrix A3 = build_block_A(3);
  CHECK(A3.rows() == 9);
  CHECK(A3.cols() == 9);
  CHECK(A3.coeff(3, 3) == 1);  // second block starts at row 4, column 4 (1-based)
  CHECK(A3.coeff(3, 4) == -1);
}

TEST_CASE("permute_columns moves column c to column pi(c)") {
  ConstraintMatrix A = build_block_A(2);
  Permutation id = Permutation::identity(4);
  CHECK(dense(permute_columns(A, id)) == dense(A));

  Permutation swap13_24({3, 4, 1, 2});
  Eigen::MatrixXi Api = dense(permute_columns(A, swap13_24));
  Eigen::MatrixXi expected(2, 4);
  expected << 0, 0, 1, -1, 1, -1, 0, 0;
  CHECK(Api == expected);

  CHECK(dense(permute_columns(permute_columns(A, swap13_24), swap13_24.inverse())) ==
        dense(A));

  CHECK_THROWS_AS(permute_columns(A, Permutation::identity(9)), std::invalid_argument);
}

TEST_CASE("all_nonzero") {
  Eigen::VectorXi a(3);
  a << 1, -1, 3;
  CHECK(all_nonzero(a));
  a << 1, 0, 3;
  CHECK_FALSE(all_nonzero(a));
  Eigen::VectorXi empty(0);
  CHECK(all_nonzero(empty));  // vacuous; n=1 systems are feasible
}

TEST_CASE("constraint sets of the identity") {
  auto sets2 = constraint_sets(Permutation::identity(4), 2);
  CHECK(sets2[0] == std::vector<int>{1, 2});
  CHECK(sets2[1] == std::vector<int>{3, 4});

  auto sets9 = constraint_sets(Permutation::identity(81), 9);
  std::vector<int> row3(9);
  std::iota(row3.begin(), row3.end(), 19);
  CHECK(sets9[2] == row3);
}

TEST_CASE("constraint sets partition the cells for any permutation") {
  corpus::Rng rng(7);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      Permutation pi = random_perm(rng, n * n);
      auto sets = constraint_sets(pi, n);
      std::vector<int> seen(n * n, 0);
      for (const auto& cs : sets) {
        CHECK(cs.size() == static_cast<std::size_t>(n));
        for (int cell : cs) ++seen[cell - 1];
      }
      for (int c : seen) CHECK(c == 1);
    }
  }
}

TEST_CASE("classical permutations describe rows, columns and blocks") {
  auto p2 = classical_permutations(2);
  auto sets = constraint_sets(p2[1], 4);
  CHECK(sets[0] == std::vector<int>{1, 5, 9, 13});

  auto p3 = classical_permutations(3);
  auto blocks = constraint_sets(p3[2], 9);
  CHECK(blocks[0] == std::vector<int>{1, 2, 3, 10, 11, 12, 19, 20, 21});

  // cell 21 is row 3, column 3
  auto rows = constraint_sets(p3[0], 9);
  auto cols = constraint_sets(p3[1], 9);
  CHECK(std::binary_search(rows[2].begin(), rows[2].end(), 21));
  CHECK(std::binary_search(cols[2].begin(), cols[2].end(), 21));
}

TEST_CASE("apply_perm") {
  Eigen::VectorXi x(4);
  x << 1, 2, 1, 2;
  CHECK(apply_perm(Permutation::identity(4), x) == x);

  Permutation cycle12({2, 1, 3, 4});
  Eigen::VectorXi expected(4);
  expected << 2, 1, 1, 2;
  CHECK(apply_perm(cycle12, x) == expected);

  corpus::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Permutation pi = random_perm(rng, 9);
    Eigen::VectorXi v(9);
    for (int i = 0; i < 9; ++i) v[i] = rng.below(100);
    CHECK(apply_perm(pi, apply_perm(pi.inverse(), v)) == v);
  }
  CHECK_THROWS_AS(apply_perm(Permutation::identity(4), Eigen::VectorXi(5)),
                  std::invalid_argument);
}

TEST_CASE("permutation basics") {
  CHECK_THROWS_AS(Permutation({1, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 1, 2}), std::invalid_argument);
  Permutation a({2, 3, 1});
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.cycle_string() == "(1 2 3)");
  CHECK(Permutation::identity(5).cycle_string() == "()");
  CHECK(Permutation({2, 1, 4, 3}).cycle_string() == "(1 2)(3 4)");
}

TEST_CASE("distinctness equivalence on A(n) (exhaustive small orders)") {
  for (int n = 2; n <= 4; ++n) {
    ConstraintMatrix A = build_A(n);
    std::vector<int> x(n, 1);
    while (true) {
      Eigen::VectorXi v(n);
      for (int i = 0; i < n; ++i) v[i] = x[i];
      bool matrix = all_nonzero(A * v);
      bool distinct = pairwise_distinct(v);
      std::uint64_t mask = 0;
      for (int i = 0; i < n; ++i) mask |= std::uint64_t{1} << v[i];
      bool full_set = mask == ((std::uint64_t{1} << (n + 1)) - 2);
      CHECK(matrix == distinct);
      CHECK(matrix == full_set);  // bounds hold by construction
      int i = n - 1;
      while (i >= 0 && x[i] == n) x[i--] = 1;
      if (i < 0) break;
      ++x[i];
    }
  }
}

TEST_CASE("distinctness equivalence at n=5 (random sampling)") {
  ConstraintMatrix A = build_A(5);
  corpus::Rng rng(23);
  for (int trial = 0; trial < 2000; ++trial) {
    Eigen::VectorXi v(5);
    for (int i = 0; i < 5; ++i) v[i] = 1 + rng.below(5);
    CHECK(all_nonzero(A * v) == pairwise_distinct(v));
  }
}

TEST_CASE("A_pi x equals A applied to the forward-permuted vector") {
  corpus::Rng rng(31);
  for (int n = 2; n <= 4; ++n) {
    ConstraintMatrix A = build_block_A(n);
    for (int trial = 0; trial < 20; ++trial) {
      Permutation pi = random_perm(rng, n * n);
      Eigen::VectorXi x(n * n);
      for (int i = 0; i < n * n; ++i) x[i] = rng.below(50) - 25;
      Eigen::VectorXi forward(n * n);
      for (int i = 1; i <= n * n; ++i) forward[i - 1] = x[pi(i) - 1];
      CHECK(permute_columns(A, pi) * x == A * forward);
    }
  }
}

TEST_CASE("per-set distinctness matches the full-length predicate") {
  corpus::Rng rng(37);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 30; ++trial) {
      Permutation pi = random_perm(rng, n * n);
      ConstraintMatrix A_pi = permute_columns(build_block_A(n), pi);
      auto sets = constraint_sets(pi, n);
      Eigen::VectorXi x(n * n);
      for (int i = 0; i < n * n; ++i) x[i] = 1 + rng.below(n);
      bool per_set = true;
      for (const auto& cs : sets) {
        Eigen::VectorXi sub(n);
        for (int l = 0; l < n; ++l) sub[l] = x[cs[l] - 1];
        if (!pairwise_distinct(sub)) per_set = false;
      }
      CHECK(all_nonzero(A_pi * x) == per_set);
    }
  }
}

TEST_CASE("puzzle construction validates its parts") {
  CHECK_THROWS_AS(classical_puzzle(2).with_givens(Givens({{1, 1}, {1, 2}}, 4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Givens({{17, 1}}, 4), std::invalid_argument);
  CHECK_THROWS_AS(Givens({{1, 5}}, 4), std::invalid_argument);
  CHECK_THROWS_AS(Puzzle(1, Permutation::identity(1), Permutation::identity(1),
                         Permutation::identity(1)),
                  std::invalid_argument);
}
