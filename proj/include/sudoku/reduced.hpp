#ifndef SUDOKU_REDUCED_HPP
#define SUDOKU_REDUCED_HPP

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "sudoku/matrix.hpp"
#include "sudoku/puzzle.hpp"
#include "sudoku/solve.hpp"

namespace sudoku {

/// A sorted set of cells J = {j_1 < ... < j_p} with the induced
/// transformation t_J(j_l) = l.
class BaseSet {
public:
  BaseSet(std::vector<int> cells, int cell_count) : cells_(std::move(cells)) {
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    if (cells_.empty() || cells_.front() < 1 || cells_.back() > cell_count)
      throw std::invalid_argument("base set cells out of range");
  }

  static BaseSet all_cells(int cell_count) {
    std::vector<int> cells(cell_count);
    std::iota(cells.begin(), cells.end(), 1);
    return BaseSet(std::move(cells), cell_count);
  }

  int size() const { return static_cast<int>(cells_.size()); }
  const std::vector<int>& cells() const { return cells_; }

  bool contains(int cell) const {
    return std::binary_search(cells_.begin(), cells_.end(), cell);
  }

  /// t_J: 1-based position of a member cell.
  int position(int cell) const {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), cell);
    if (it == cells_.end() || *it != cell)
      throw std::invalid_argument("cell not in base set");
    return static_cast<int>(it - cells_.begin()) + 1;
  }

private:
  std::vector<int> cells_;
};

/// P_J(x) = (x_{j_1}, ..., x_{j_p}).
inline Eigen::VectorXi project_vector(const BaseSet& J, const Eigen::VectorXi& x) {
  Eigen::VectorXi z(J.size());
  for (int l = 0; l < J.size(); ++l) z[l] = x[J.cells()[l] - 1];
  return z;
}

/// Row-wise projection P_J(M); the row count is preserved, row filtering
/// happens in build_reduced.
inline ConstraintMatrix project_matrix(const BaseSet& J, const ConstraintMatrix& M) {
  std::vector<int> col_map(M.cols(), -1);
  for (int l = 0; l < J.size(); ++l) col_map[J.cells()[l] - 1] = l;
  std::vector<Eigen::Triplet<int>> trip;
  for (int r = 0; r < M.outerSize(); ++r)
    for (ConstraintMatrix::InnerIterator it(M, r); it; ++it)
      if (col_map[it.col()] >= 0)
        trip.emplace_back(static_cast<int>(it.row()), col_map[it.col()], it.value());
  ConstraintMatrix P(M.rows(), J.size());
  P.setFromTriplets(trip.begin(), trip.end());
  return P;
}

/// The subproblem induced by a base set J: projected inequality matrices
/// with rows of fewer than two nonzeros dropped, the projected equality
/// system and its right side. row_origin maps reduced rows back to rows
/// of A_{pi_r}; eq_origin maps equality rows back to given indices.
struct ReducedProblem {
  int p;
  int n;
  std::array<ConstraintMatrix, 3> B;
  ConstraintMatrix Beq;
  Eigen::VectorXi g_prime;
  std::array<std::vector<int>, 3> row_origin;
  std::vector<int> eq_origin;
};

namespace detail {

inline ConstraintMatrix keep_rows(const ConstraintMatrix& M, int min_nonzeros,
                                  std::vector<int>& origin) {
  origin.clear();
  for (int r = 0; r < M.rows(); ++r) {
    int nnz = 0;
    for (ConstraintMatrix::InnerIterator it(M, r); it; ++it) ++nnz;
    if (nnz >= min_nonzeros) origin.push_back(r);
  }
  std::vector<Eigen::Triplet<int>> trip;
  for (int out = 0; out < static_cast<int>(origin.size()); ++out)
    for (ConstraintMatrix::InnerIterator it(M, origin[out]); it; ++it)
      trip.emplace_back(out, static_cast<int>(it.col()), it.value());
  ConstraintMatrix R(static_cast<int>(origin.size()), M.cols());
  R.setFromTriplets(trip.begin(), trip.end());
  return R;
}

}  // namespace detail

inline ReducedProblem build_reduced(const Puzzle& puzzle, const BaseSet& J) {
  ReducedProblem rp;
  rp.p = J.size();
  rp.n = puzzle.order();
  for (int r = 1; r <= 3; ++r) {
    ConstraintMatrix proj = project_matrix(J, puzzle.matrix(r));
    rp.B[r - 1] = detail::keep_rows(proj, 2, rp.row_origin[r - 1]);
  }
  // A_eq has one row per given with a single unit entry at the given's cell.
  const auto& givens = puzzle.givens().pairs();
  std::vector<Eigen::Triplet<int>> trip;
  std::vector<int> gp;
  for (int l = 0; l < static_cast<int>(givens.size()); ++l) {
    auto [cell, value] = givens[l];
    if (J.contains(cell)) {
      trip.emplace_back(static_cast<int>(gp.size()), J.position(cell) - 1, 1);
      gp.push_back(value);
      rp.eq_origin.push_back(l);
    }
  }
  rp.Beq = ConstraintMatrix(static_cast<int>(gp.size()), rp.p);
  rp.Beq.setFromTriplets(trip.begin(), trip.end());
  rp.g_prime = Eigen::Map<Eigen::VectorXi>(gp.data(), static_cast<int>(gp.size()));
  return rp;
}

/// All z in {1..n}^p with B_r z <> 0 for r = 1,2,3 and B_eq z = g'.
/// Cells are assigned in index order, values ascending.
inline SolutionSet enumerate_reduced(const ReducedProblem& rp,
                                     std::optional<long long> limit = std::nullopt) {
  SolutionSet result;
  result.limit = limit;

  std::vector<int> fixed(rp.p, 0);
  for (int r = 0; r < rp.Beq.rows(); ++r)
    for (ConstraintMatrix::InnerIterator it(rp.Beq, r); it; ++it) {
      int col = static_cast<int>(it.col());
      int v = rp.g_prime[r];
      if (fixed[col] != 0 && fixed[col] != v) {
        result.exhausted = true;  // contradictory equality rows
        return result;
      }
      fixed[col] = v;
    }

  // Each inequality row compares exactly two components.
  std::vector<std::vector<int>> neighbors(rp.p);
  for (const auto& B : rp.B)
    for (int r = 0; r < B.outerSize(); ++r) {
      std::vector<int> cols;
      for (ConstraintMatrix::InnerIterator it(B, r); it; ++it)
        cols.push_back(static_cast<int>(it.col()));
      neighbors[cols[0]].push_back(cols[1]);
      neighbors[cols[1]].push_back(cols[0]);
    }

  std::vector<int> z(rp.p, 0);
  bool aborted = false;
  auto consistent = [&](int idx, int v) {
    for (int other : neighbors[idx])
      if (z[other] == v) return false;
    return true;
  };
  auto rec = [&](auto&& self, int idx) -> void {
    if (aborted) return;
    if (idx == rp.p) {
      Eigen::VectorXi sol(rp.p);
      for (int i = 0; i < rp.p; ++i) sol[i] = z[i];
      result.solutions.push_back(std::move(sol));
      if (limit && static_cast<long long>(result.solutions.size()) >= *limit)
        aborted = true;
      return;
    }
    int lo = fixed[idx] ? fixed[idx] : 1;
    int hi = fixed[idx] ? fixed[idx] : rp.n;
    for (int v = lo; v <= hi; ++v) {
      if (!consistent(idx, v)) continue;
      z[idx] = v;
      self(self, idx + 1);
      z[idx] = 0;
      if (aborted) return;
    }
  };
  rec(rec, 0);
  result.exhausted = !aborted;
  return result;
}

/// Definition of a unicity cell w.r.t. a base set: every solution of the
/// reduced problem induced by J agrees on component t_J(i) with value v.
/// Vacuously true when the reduced problem is unsolvable.
inline bool is_unicity_cell_wrt(const Puzzle& puzzle, const BaseSet& J, int cell, int value) {
  if (!J.contains(cell))
    throw std::invalid_argument("is_unicity_cell_wrt: cell not in base set");
  ReducedProblem rp = build_reduced(puzzle, J);
  SolutionSet s = enumerate_reduced(rp);
  int idx = J.position(cell) - 1;
  for (const auto& z : s.solutions)
    if (z[idx] != value) return false;
  return true;
}

struct CellUnicity {
  enum class Kind { Unique, Vacuous, Ambiguous };
  Kind kind;
  int value = 0;  // set iff kind == Unique
};

/// All solutions agree on the cell -> Unique with that value; no solution
/// at all -> Vacuous; two solutions disagree -> Ambiguous.
inline CellUnicity is_unicity_cell(const Puzzle& puzzle, int cell) {
  SolutionSet s = enumerate_solutions(puzzle);
  if (s.solutions.empty()) return {CellUnicity::Kind::Vacuous};
  int v = s.solutions.front()[cell - 1];
  for (const auto& x : s.solutions)
    if (x[cell - 1] != v) return {CellUnicity::Kind::Ambiguous};
  return {CellUnicity::Kind::Unique, v};
}

/// Full-problem unicity of a cell versus certification by base sets:
/// a unique value must be certified by J = all cells, and no sampled
/// smaller base set may certify a value the full problem contradicts.
inline bool verify_base_set_certificates(const Puzzle& puzzle, int cell, int samples = 32,
                              unsigned seed = 1) {
  int cells = puzzle.cell_count();
  CellUnicity u = is_unicity_cell(puzzle, cell);

  if (u.kind != CellUnicity::Kind::Ambiguous) {
    BaseSet all = BaseSet::all_cells(cells);
    if (u.kind == CellUnicity::Kind::Unique &&
        !is_unicity_cell_wrt(puzzle, all, cell, u.value))
      return false;
    if (u.kind == CellUnicity::Kind::Vacuous) {
      for (int v = 1; v <= puzzle.order(); ++v)
        if (!is_unicity_cell_wrt(puzzle, all, cell, v)) return false;
    }
  }

  // xorshift-seeded sampling of base sets containing the cell
  std::uint64_t state = seed * 2654435761u + 1;
  auto next = [&]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  bool solvable = count_solutions(puzzle, 1).first > 0;
  for (int t = 0; t < samples; ++t) {
    std::vector<int> members{cell};
    int extra = 1 + static_cast<int>(next() % std::min(cells, 6));
    for (int e = 0; e < extra; ++e) members.push_back(1 + static_cast<int>(next() % cells));
    BaseSet J(std::move(members), cells);
    ReducedProblem rp = build_reduced(puzzle, J);
    SolutionSet s = enumerate_reduced(rp);
    if (s.solutions.empty()) continue;  // vacuous certificate, pins nothing
    int idx = J.position(cell) - 1;
    int v = s.solutions.front()[idx];
    bool certifies = true;
    for (const auto& z : s.solutions)
      if (z[idx] != v) certifies = false;
    if (!certifies) continue;
    // J certifies value v; the full problem must not contradict it
    if (solvable) {
      if (u.kind == CellUnicity::Kind::Ambiguous) return false;
      if (u.kind == CellUnicity::Kind::Unique && u.value != v) return false;
    }
  }
  return true;
}

/// Greedy search for a small certifying base set: seed with the cell and
/// every given sharing a constraint set with it, then repeatedly add the
/// outside cell meeting the most constraint sets that intersect J.
inline std::optional<std::pair<BaseSet, int>> find_small_base_set(const Puzzle& puzzle,
                                                                  int cell, int budget) {
  int cells = puzzle.cell_count();
  std::set<int> J{cell};
  for (auto [gcell, gvalue] : puzzle.givens().pairs())
    for (int r = 1; r <= 3; ++r)
      if (puzzle.set_of(r, gcell) == puzzle.set_of(r, cell)) J.insert(gcell);

  for (int round = 0; round < budget; ++round) {
    BaseSet base(std::vector<int>(J.begin(), J.end()), cells);
    ReducedProblem rp = build_reduced(puzzle, base);
    SolutionSet s = enumerate_reduced(rp);
    int idx = base.position(cell) - 1;
    if (s.solutions.empty())
      return std::make_pair(base, 0);  // vacuous certificate
    int v = s.solutions.front()[idx];
    bool unique = true;
    for (const auto& z : s.solutions)
      if (z[idx] != v) unique = false;
    if (unique) return std::make_pair(base, v);

    // grow by overlap with J's constraint sets
    int best = -1, best_score = -1;
    for (int c = 1; c <= cells; ++c) {
      if (J.count(c)) continue;
      int score = 0;
      for (int r = 1; r <= 3; ++r)
        for (int j : J)
          if (puzzle.set_of(r, c) == puzzle.set_of(r, j)) {
            ++score;
            break;
          }
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    if (best < 0) return std::nullopt;
    J.insert(best);
  }
  return std::nullopt;
}

}  // namespace sudoku

#endif
