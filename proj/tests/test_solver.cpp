#include <doctest.h>

#include <algorithm>
#include <vector>

#include "corpus.hpp"
#include "sudoku/solve.hpp"

using namespace sudoku;

namespace {

// n=2 instance with row sets {1,2},{3,4} and column sets {1,3},{2,4};
// pi3 duplicates pi1.
Puzzle tiny_puzzle(Givens g = {}) {
  Permutation pi1 = Permutation::identity(4);
  Permutation pi2({1, 3, 2, 4});
  return Puzzle(2, pi1, pi2, pi1, std::move(g));
}

Assignment vec(std::initializer_list<int> vals) {
  Assignment x(static_cast<int>(vals.size()));
  int i = 0;
  for (int v : vals) x[i++] = v;
  return x;
}

}  // namespace

TEST_CASE("is_solution checks bounds, distinctness and givens") {
  Puzzle p = tiny_puzzle();
  CHECK(is_solution(p, vec({1, 2, 2, 1})));
  CHECK(is_solution(p, vec({2, 1, 1, 2})));
  CHECK_FALSE(is_solution(p, vec({1, 1, 2, 2})));  // repeat in row set {1,2}
  CHECK_FALSE(is_solution(p, vec({1, 2, 1, 2})));  // repeat in column set {1,3}
  CHECK_FALSE(is_solution(p, vec({0, 2, 2, 1})));  // out of bounds

  Puzzle pg = tiny_puzzle(Givens({{1, 2}}, 2));
  CHECK_FALSE(is_solution(pg, vec({1, 2, 2, 1})));  // violates the given
  CHECK(is_solution(pg, vec({2, 1, 1, 2})));

  CHECK_THROWS_AS(is_solution(p, vec({1, 2, 2})), std::invalid_argument);
}

TEST_CASE("matrix and set routes agree on random vectors") {
  corpus::Rng rng(41);
  for (int n = 2; n <= 4; ++n) {
    Puzzle p = n == 4 ? classical_puzzle(2)
                      : Puzzle(n, Permutation::identity(n * n), Permutation::identity(n * n),
                               Permutation::identity(n * n));
    for (int trial = 0; trial < 10000; ++trial) {
      Assignment x(n * n);
      for (int i = 0; i < n * n; ++i) x[i] = 1 + rng.below(n);
      is_solution(p, x);  // throws on route disagreement
    }
  }
}

TEST_CASE("empty shidoku has 288 solutions") {
  SolutionSet s = enumerate_solutions(classical_puzzle(2));
  CHECK(s.solutions.size() == 288);
  CHECK(s.exhausted);
  for (const auto& x : s.solutions) CHECK(is_solution(classical_puzzle(2), x));
}

TEST_CASE("enumeration respects the limit and order is deterministic") {
  Puzzle p = classical_puzzle(2);
  SolutionSet capped = enumerate_solutions(p, 10);
  CHECK(capped.solutions.size() == 10);
  CHECK_FALSE(capped.exhausted);

  SolutionSet a = enumerate_solutions(p);
  SolutionSet b = enumerate_solutions(p);
  REQUIRE(a.solutions.size() == b.solutions.size());
  for (std::size_t i = 0; i < a.solutions.size(); ++i) CHECK(a.solutions[i] == b.solutions[i]);
  for (std::size_t i = 0; i < capped.solutions.size(); ++i)
    CHECK(capped.solutions[i] == a.solutions[i]);
}

TEST_CASE("conflicting givens in one constraint set yield no solution") {
  Puzzle p = classical_puzzle(2).with_givens(Givens({{1, 1}, {2, 1}}, 4));
  SolutionSet s = enumerate_solutions(p);
  CHECK(s.solutions.empty());
  CHECK(s.exhausted);
}

TEST_CASE("count_solutions") {
  Puzzle p = classical_puzzle(2);
  auto [c2, ex2] = count_solutions(p, 2);
  CHECK(c2 == 2);
  CHECK_FALSE(ex2);

  Puzzle bad = p.with_givens(Givens({{1, 1}, {2, 1}}, 4));
  auto [c0, ex0] = count_solutions(bad, 100);
  CHECK(c0 == 0);
  CHECK(ex0);

  // 15 of 16 cells of a valid grid fixed
  const Assignment& grid = corpus::shidoku_solutions().front();
  std::vector<std::pair<int, int>> givens;
  for (int i = 2; i <= 16; ++i) givens.emplace_back(i, grid[i - 1]);
  auto [c1, ex1] = count_solutions(p.with_givens(Givens(std::move(givens), 4)), 2);
  CHECK(c1 == 1);
  CHECK(ex1);

  CHECK_THROWS_AS(count_solutions(p, 0), std::invalid_argument);
}

TEST_CASE("is_uniquely_solvable verdicts") {
  const Assignment& grid = corpus::shidoku_solutions().front();
  std::vector<std::pair<int, int>> all;
  for (int i = 1; i <= 16; ++i) all.emplace_back(i, grid[i - 1]);
  Puzzle full = classical_puzzle(2).with_givens(Givens(all, 4));
  auto v = is_uniquely_solvable(full);
  CHECK(v.kind == SolvabilityVerdict::Kind::Unique);
  CHECK(*v.solution == grid);

  auto multi = is_uniquely_solvable(classical_puzzle(2));
  CHECK(multi.kind == SolvabilityVerdict::Kind::Multiple);
  CHECK(*multi.solution != *multi.alternative);

  Puzzle bad = classical_puzzle(2).with_givens(Givens({{1, 1}, {2, 1}}, 4));
  CHECK(is_uniquely_solvable(bad).kind == SolvabilityVerdict::Kind::Unsolvable);
}

TEST_CASE("feasibility depends only on constraint sets, not on the image choice") {
  // two distinct pi2 with identical constraint sets {1,3}, {2,4}
  Permutation pi2_a({1, 3, 2, 4});
  Permutation pi2_b({3, 1, 4, 2});
  REQUIRE(pi2_a != pi2_b);
  REQUIRE(constraint_sets(pi2_a, 2) == constraint_sets(pi2_b, 2));
  Puzzle a(2, Permutation::identity(4), pi2_a, Permutation::identity(4));
  Puzzle b(2, Permutation::identity(4), pi2_b, Permutation::identity(4));
  corpus::Rng rng(59);
  for (int code = 0; code < 16; ++code) {
    Assignment x(4);
    for (int i = 0; i < 4; ++i) x[i] = 1 + ((code >> i) & 1);
    CHECK(is_solution(a, x) == is_solution(b, x));
  }
  SolutionSet sa = enumerate_solutions(a);
  SolutionSet sb = enumerate_solutions(b);
  CHECK(sa.solutions.size() == sb.solutions.size());
}

TEST_CASE("adding a consistent given never increases the count") {
  corpus::Rng rng(53);
  for (int trial = 0; trial < 15; ++trial) {
    Puzzle p = corpus::random_instance(rng, 4, 10, false);
    SolutionSet s = enumerate_solutions(p);
    if (s.solutions.empty()) continue;
    const Assignment& x = s.solutions.front();
    for (int cell = 1; cell <= 16; ++cell) {
      if (p.givens().contains(cell)) continue;
      auto givens = p.givens().pairs();
      givens.emplace_back(cell, x[cell - 1]);
      SolutionSet t = enumerate_solutions(p.with_givens(Givens(givens, 4)));
      CHECK(t.solutions.size() <= s.solutions.size());
      CHECK(!t.solutions.empty());
      break;
    }
    // a given contradicting every solution empties the set
    int cell = 1;
    while (p.givens().contains(cell)) ++cell;
    std::vector<int> used;
    for (const auto& sol : s.solutions) used.push_back(sol[cell - 1]);
    for (int v = 1; v <= 4; ++v) {
      if (std::find(used.begin(), used.end(), v) != used.end()) continue;
      auto givens = p.givens().pairs();
      givens.emplace_back(cell, v);
      CHECK(enumerate_solutions(p.with_givens(Givens(givens, 4))).solutions.empty());
      break;
    }
  }
}
