#ifndef SUDOKU_SOLVE_HPP
#define SUDOKU_SOLVE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "sudoku/puzzle.hpp"

namespace sudoku {

/// Candidate or actual solution: length n^2, entries in {1..n}.
using Assignment = Eigen::VectorXi;

struct SolutionSet {
  std::vector<Assignment> solutions;
  bool exhausted = false;  // true iff the search tree was fully explored
  std::optional<long long> limit;
};

/// Membership test for S(n,g). Evaluates the matrix predicate
/// A_{pi_r} x <> 0 and the per-constraint-set value-set equality and
/// insists that both routes agree.
inline bool is_solution(const Puzzle& puzzle, const Assignment& x) {
  int n = puzzle.order();
  if (x.size() != puzzle.cell_count())
    throw std::invalid_argument("is_solution: assignment length mismatch");
  bool in_bounds = true;
  for (int i = 0; i < x.size(); ++i)
    if (x[i] < 1 || x[i] > n) in_bounds = false;

  bool matrix_ok = in_bounds;
  for (int r = 1; r <= 3 && matrix_ok; ++r)
    matrix_ok = all_nonzero(puzzle.matrix(r) * x);

  bool sets_ok = in_bounds;
  for (int r = 1; r <= 3 && sets_ok; ++r)
    for (const auto& cs : puzzle.sets(r)) {
      std::uint64_t seen = 0;
      for (int cell : cs)
        if (x[cell - 1] >= 1 && x[cell - 1] <= n) seen |= std::uint64_t{1} << x[cell - 1];
      if (seen != ((std::uint64_t{1} << (n + 1)) - 2)) {
        sets_ok = false;
        break;
      }
    }

  if (in_bounds && matrix_ok != sets_ok)
    throw std::logic_error("is_solution: matrix and set routes disagree");

  if (!matrix_ok) return false;
  for (auto [cell, value] : puzzle.givens().pairs())
    if (x[cell - 1] != value) return false;
  return true;
}

namespace detail {

struct Search {
  const Puzzle& puzzle;
  int n;
  int cells;
  std::uint64_t full;
  std::vector<int> values;                     // 0 = unassigned
  std::vector<std::uint64_t> used;             // 3 * n masks, index (r-1)*n + set-1
  std::vector<Assignment>* out;
  long long found = 0;
  std::optional<long long> cap;
  bool aborted = false;

  explicit Search(const Puzzle& p, std::optional<long long> cap_, std::vector<Assignment>* out_)
      : puzzle(p), n(p.order()), cells(p.cell_count()),
        full(((std::uint64_t{1} << n) - 1) << 1),
        values(cells, 0), used(3 * n, 0), out(out_), cap(cap_) {}

  std::uint64_t& mask(int r, int cell) {
    return used[(r - 1) * n + puzzle.set_of(r, cell) - 1];
  }

  std::uint64_t candidates(int cell) {
    std::uint64_t u = mask(1, cell) | mask(2, cell) | mask(3, cell);
    return full & ~u;
  }

  bool assign_givens() {
    for (auto [cell, value] : puzzle.givens().pairs()) {
      std::uint64_t bit = std::uint64_t{1} << value;
      if (!(candidates(cell) & bit)) return false;
      values[cell - 1] = value;
      for (int r = 1; r <= 3; ++r) mask(r, cell) |= bit;
    }
    return true;
  }

  void emit() {
    ++found;
    if (out) {
      Assignment x(cells);
      for (int i = 0; i < cells; ++i) x[i] = values[i];
      out->push_back(std::move(x));
    }
    if (cap && found >= *cap) aborted = true;
  }

  // Minimum-remaining-values cell choice, lowest index breaking ties,
  // values tried ascending.
  void run(int unassigned) {
    if (aborted) return;
    if (unassigned == 0) {
      emit();
      return;
    }
    int best = -1, best_count = n + 1;
    std::uint64_t best_cand = 0;
    for (int cell = 1; cell <= cells; ++cell) {
      if (values[cell - 1] != 0) continue;
      std::uint64_t cand = candidates(cell);
      int c = __builtin_popcountll(cand);
      if (c < best_count) {
        best = cell;
        best_count = c;
        best_cand = cand;
        if (c == 0) return;
      }
    }
    for (int v = 1; v <= n; ++v) {
      std::uint64_t bit = std::uint64_t{1} << v;
      if (!(best_cand & bit)) continue;
      values[best - 1] = v;
      for (int r = 1; r <= 3; ++r) mask(r, best) |= bit;
      run(unassigned - 1);
      for (int r = 1; r <= 3; ++r) mask(r, best) &= ~bit;
      values[best - 1] = 0;
      if (aborted) return;
    }
  }
};

}  // namespace detail

/// All members of S(n,g), or the first `limit` in deterministic search
/// order. exhausted is true iff the whole tree was explored.
inline SolutionSet enumerate_solutions(const Puzzle& puzzle,
                                       std::optional<long long> limit = std::nullopt) {
  SolutionSet result;
  result.limit = limit;
  detail::Search search(puzzle, limit, &result.solutions);
  if (search.assign_givens()) {
    search.run(puzzle.cell_count() - static_cast<int>(puzzle.givens().count()));
    result.exhausted = !search.aborted;
  } else {
    result.exhausted = true;
  }
  return result;
}

/// Solution count up to cap; second component true iff the count is exact.
inline std::pair<long long, bool> count_solutions(const Puzzle& puzzle, long long cap) {
  if (cap < 1) throw std::invalid_argument("count_solutions: cap >= 1 required");
  detail::Search search(puzzle, cap, nullptr);
  if (!search.assign_givens()) return {0, true};
  search.run(puzzle.cell_count() - static_cast<int>(puzzle.givens().count()));
  return {search.found, !search.aborted};
}

struct SolvabilityVerdict {
  enum class Kind { Unique, Multiple, Unsolvable };
  Kind kind;
  std::optional<Assignment> solution;     // Unique or Multiple
  std::optional<Assignment> alternative;  // Multiple only
};

inline SolvabilityVerdict is_uniquely_solvable(const Puzzle& puzzle) {
  SolutionSet s = enumerate_solutions(puzzle, 2);
  if (s.solutions.empty()) return {SolvabilityVerdict::Kind::Unsolvable, {}, {}};
  if (s.solutions.size() == 1)
    return {SolvabilityVerdict::Kind::Unique, s.solutions[0], {}};
  return {SolvabilityVerdict::Kind::Multiple, s.solutions[0], s.solutions[1]};
}

}  // namespace sudoku

#endif
