#ifndef SUDOKU_CONSISTENCY_HPP
#define SUDOKU_CONSISTENCY_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "sudoku/matrix.hpp"
#include "sudoku/permutation.hpp"
#include "sudoku/puzzle.hpp"
#include "sudoku/solve.hpp"

namespace sudoku {

/// tau is pi-consistent iff it maps each constraint set of pi onto itself.
inline bool is_pi_consistent(const Permutation& tau, const Permutation& pi, int n) {
  auto sets = constraint_sets(pi, n);
  std::vector<int> set_of(n * n);
  for (int j = 1; j <= n; ++j)
    for (int cell : sets[j - 1]) set_of[cell - 1] = j;
  for (int i = 1; i <= n * n; ++i)
    if (set_of[tau(i) - 1] != set_of[i - 1]) return false;
  return true;
}

/// tau is pi-x-consistent iff { x_{tau^{-1}(i)} | i in cs } = { x_i | i in cs }
/// as sets, for every constraint set cs of pi.
inline bool is_pi_x_consistent(const Permutation& tau, const Permutation& pi,
                               const Assignment& x) {
  int cells = static_cast<int>(x.size());
  int n = 0;
  while (n * n < cells) ++n;
  if (n * n != cells || tau.degree() != cells || pi.degree() != cells)
    throw std::invalid_argument("is_pi_x_consistent: length mismatch");
  Permutation tau_inv = tau.inverse();
  auto sets = constraint_sets(pi, n);
  for (const auto& cs : sets) {
    std::vector<int> before, after;
    for (int i : cs) {
      before.push_back(x[i - 1]);
      after.push_back(x[tau_inv(i) - 1]);
    }
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    before.erase(std::unique(before.begin(), before.end()), before.end());
    after.erase(std::unique(after.begin(), after.end()), after.end());
    if (before != after) return false;
  }
  return true;
}

/// All consistency predicates for a candidate tau, computed eagerly.
struct ConsistencyReport {
  std::array<bool, 3> pi_consistent;
  std::array<bool, 3> pi_x_consistent;
  bool fixes_givens;
  bool moves_x;  // tau(x) != x

  /// The witness conditions: pi1-consistent, pi2-x- and
  /// pi3-x-consistent, fixes every given and moves x.
  bool is_witness() const {
    return pi_consistent[0] && pi_x_consistent[1] && pi_x_consistent[2] &&
           fixes_givens && moves_x;
  }
};

inline ConsistencyReport make_consistency_report(const Puzzle& puzzle,
                                                 const Permutation& tau,
                                                 const Assignment& x) {
  ConsistencyReport rep{};
  for (int r = 1; r <= 3; ++r) {
    rep.pi_consistent[r - 1] = is_pi_consistent(tau, puzzle.pi(r), puzzle.order());
    rep.pi_x_consistent[r - 1] = is_pi_x_consistent(tau, puzzle.pi(r), x);
  }
  rep.fixes_givens = true;
  for (auto [cell, value] : puzzle.givens().pairs())
    if (tau(cell) != cell) rep.fixes_givens = false;
  rep.moves_x = apply_perm(tau, x) != x;
  return rep;
}

/// The unique pi-consistent tau with tau(x) = y. Requires that both x and
/// y carry the full value set {1..n} on every constraint set of pi; within
/// cs_pi(j), tau(i) is the single cell i' there with y_{i'} = x_i.
inline Permutation derive_tau(const Assignment& x, const Assignment& y,
                              const Permutation& pi, int n) {
  if (x.size() != n * n || y.size() != n * n)
    throw std::invalid_argument("derive_tau: length mismatch");
  auto sets = constraint_sets(pi, n);
  std::vector<int> image(n * n, 0);
  for (const auto& cs : sets) {
    std::array<int, 65> cell_of_y{};  // value -> cell of y within this set
    std::uint64_t xs = 0, ys = 0;
    for (int i : cs) {
      int xv = x[i - 1], yv = y[i - 1];
      if (xv < 1 || xv > n || yv < 1 || yv > n)
        throw std::invalid_argument("derive_tau: value out of range");
      xs |= std::uint64_t{1} << xv;
      ys |= std::uint64_t{1} << yv;
      cell_of_y[yv] = i;
    }
    std::uint64_t full = ((std::uint64_t{1} << (n + 1)) - 2);
    if (xs != full || ys != full)
      throw std::invalid_argument("derive_tau: constraint-set values do not form {1..n}");
    for (int i : cs) image[i - 1] = cell_of_y[x[i - 1]];
  }
  return Permutation(std::move(image));
}

/// The three statements of the two-imply-the-third rule:
/// (i) A_pi x <> 0, (ii) A_pi tau(x) <> 0, (iii) tau is pi-x-consistent.
inline std::tuple<bool, bool, bool> check_consistency_triple(const Permutation& pi,
                                                          const Permutation& tau,
                                                          const Assignment& x, int n) {
  ConstraintMatrix A_pi = permute_columns(build_block_A(n), pi);
  bool i = all_nonzero(A_pi * x);
  bool ii = all_nonzero(A_pi * apply_perm(tau, x));
  bool iii = is_pi_x_consistent(tau, pi, x);
  return {i, ii, iii};
}

/// A certificate that the instance has more than one solution.
struct UnicityWitness {
  Permutation tau;
  Assignment alternative;  // tau(x), a second solution
  ConsistencyReport report;
};

/// Checks both inclusions of the permutation description of S(n,g):
/// every enumerated solution y arises as tau(x) for a tau that is
/// pi1-consistent, pi2-x- and pi3-x-consistent and fixes the givens, and
/// conversely each such derived tau maps x back into S(n,g). Also checks
/// the per-family form: derive_tau(x,y,pi_r) is pi_r-consistent and fixes
/// the givens for r = 1,2,3.
inline bool characterize_solutions(const Puzzle& puzzle, const Assignment& x) {
  if (!is_solution(puzzle, x))
    throw std::invalid_argument("characterize_solutions: x is not a solution");
  int n = puzzle.order();
  SolutionSet s = enumerate_solutions(puzzle);
  for (const Assignment& y : s.solutions) {
    Permutation tau = derive_tau(x, y, puzzle.pi(1), n);
    if (apply_perm(tau, x) != y) return false;
    ConsistencyReport rep = make_consistency_report(puzzle, tau, x);
    if (!rep.pi_consistent[0] || !rep.pi_x_consistent[1] || !rep.pi_x_consistent[2] ||
        !rep.fixes_givens)
      return false;
    for (int r = 1; r <= 3; ++r) {
      Permutation tau_r = derive_tau(x, y, puzzle.pi(r), n);
      if (apply_perm(tau_r, x) != y) return false;
      if (!is_pi_consistent(tau_r, puzzle.pi(r), n)) return false;
      for (auto [cell, value] : puzzle.givens().pairs())
        if (tau_r(cell) != cell) return false;
    }
    Assignment mapped = apply_perm(tau, x);
    bool member = false;
    for (const Assignment& z : s.solutions)
      if (z == mapped) member = true;
    if (!member) return false;
  }
  return true;
}

/// Returns a witness iff another solution exists; absent iff x is the
/// unique solution.
inline std::optional<UnicityWitness> find_unicity_witness(const Puzzle& puzzle,
                                                          const Assignment& x) {
  if (!is_solution(puzzle, x))
    throw std::invalid_argument("find_unicity_witness: x is not a solution");
  SolutionSet s = enumerate_solutions(puzzle, 2);
  std::optional<Assignment> other;
  for (const Assignment& y : s.solutions)
    if (y != x) {
      other = y;
      break;
    }
  if (!other && !s.exhausted) {
    // cap hit with x among the first two; a third solution must exist
    SolutionSet s3 = enumerate_solutions(puzzle, 3);
    for (const Assignment& y : s3.solutions)
      if (y != x) {
        other = y;
        break;
      }
  }
  if (!other) return std::nullopt;
  Permutation tau = derive_tau(x, *other, puzzle.pi(1), puzzle.order());
  ConsistencyReport rep = make_consistency_report(puzzle, tau, x);
  if (!rep.is_witness())
    throw std::logic_error("find_unicity_witness: derived tau fails witness conditions");
  return UnicityWitness{std::move(tau), *other, rep};
}

}  // namespace sudoku

#endif
