#ifndef SUDOKU_RECTANGLES_HPP
#define SUDOKU_RECTANGLES_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sudoku/puzzle.hpp"
#include "sudoku/solve.hpp"

namespace sudoku {

/// A p-q-rectangle: p*q cells meeting q constraint sets of each family in
/// exactly p cells. witnesses[r-1] lists the q set indices per family,
/// sorted ascending.
struct Rectangle {
  std::vector<int> cells;  // sorted
  int p;
  int q;
  std::array<std::vector<int>, 3> witnesses;
};

/// Validates the rectangle condition for a cell set J. With |J| = p*q the
/// definition forces every constraint set to meet J in either p or 0 cells,
/// with exactly q sets of count p per family.
inline std::optional<Rectangle> is_rectangle(const Puzzle& puzzle, std::vector<int> cells,
                                             int p, int q) {
  int n = puzzle.order();
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  if (static_cast<int>(cells.size()) != p * q)
    throw std::invalid_argument("is_rectangle: |J| != p*q");
  if (p < 1 || p > n || q < 1 || q > n)
    throw std::invalid_argument("is_rectangle: p, q must lie in 1..n");
  Rectangle rect{cells, p, q, {}};
  for (int r = 1; r <= 3; ++r) {
    std::vector<int> count(n + 1, 0);
    for (int cell : cells) ++count[puzzle.set_of(r, cell)];
    for (int j = 1; j <= n; ++j) {
      if (count[j] == 0) continue;
      if (count[j] != p) return std::nullopt;
      rect.witnesses[r - 1].push_back(j);
    }
    if (static_cast<int>(rect.witnesses[r - 1].size()) != q) return std::nullopt;
  }
  return rect;
}

struct MinimalityReport {
  Rectangle rectangle;
  std::vector<int> value_set;  // sorted distinct values of x on the rectangle
  bool minimal;                // value_set has exactly p elements
  bool contains_given;
};

/// Minimality of a solution on a rectangle. The value set on a
/// p-q-rectangle always has at least p elements.
inline MinimalityReport is_minimal_on(const Puzzle& puzzle, const Assignment& x,
                                      const Rectangle& rect) {
  if (!is_solution(puzzle, x))
    throw std::invalid_argument("is_minimal_on: x is not a solution");
  MinimalityReport rep{rect, {}, false, false};
  for (int cell : rect.cells) rep.value_set.push_back(x[cell - 1]);
  std::sort(rep.value_set.begin(), rep.value_set.end());
  rep.value_set.erase(std::unique(rep.value_set.begin(), rep.value_set.end()),
                      rep.value_set.end());
  if (static_cast<int>(rep.value_set.size()) < rect.p)
    throw std::logic_error("is_minimal_on: fewer than p values on a p-q-rectangle");
  rep.minimal = static_cast<int>(rep.value_set.size()) == rect.p;
  for (int cell : rect.cells)
    if (puzzle.givens().contains(cell)) rep.contains_given = true;
  return rep;
}

/// The swap construction: exchange the p1-th and p2-th of the p values
/// (ascending order) inside the rectangle, leaving all other cells alone.
/// Requires x minimal on a given-free rectangle with p >= 2; the result is
/// a second solution distinct from x.
inline Assignment swap_alternative(const Puzzle& puzzle, const Assignment& x,
                                   const Rectangle& rect, int p1, int p2) {
  MinimalityReport rep = is_minimal_on(puzzle, x, rect);
  if (!rep.minimal) throw std::invalid_argument("swap_alternative: x not minimal on J");
  if (rect.p < 2) throw std::invalid_argument("swap_alternative: p >= 2 required");
  if (rep.contains_given)
    throw std::invalid_argument("swap_alternative: rectangle contains a given");
  if (p1 == p2 || p1 < 1 || p2 < 1 || p1 > rect.p || p2 > rect.p)
    throw std::invalid_argument("swap_alternative: invalid value indices");
  int a = rep.value_set[p1 - 1];
  int b = rep.value_set[p2 - 1];
  Assignment y = x;
  for (int cell : rect.cells) {
    if (x[cell - 1] == a) y[cell - 1] = b;
    else if (x[cell - 1] == b) y[cell - 1] = a;
  }
  if (y == x) throw std::logic_error("swap_alternative: swap left x unchanged");
  if (!is_solution(puzzle, y))
    throw std::logic_error("swap_alternative: swapped point is not a solution");
  return y;
}

/// All rectangles with 2 <= p <= p_max, q <= q_max on which x is minimal.
/// Candidates are value-driven: choose p values, collect the cells of x
/// carrying them and test the subsets covering all p values.
inline std::vector<MinimalityReport> find_minimal_rectangles(const Puzzle& puzzle,
                                                             const Assignment& x,
                                                             int p_max, int q_max) {
  if (!is_solution(puzzle, x))
    throw std::invalid_argument("find_minimal_rectangles: x is not a solution");
  int n = puzzle.order();
  p_max = std::min(p_max, n);
  q_max = std::min(q_max, n);
  std::vector<MinimalityReport> out;

  for (int p = 2; p <= p_max; ++p) {
    // all p-subsets of {1..n} as value sets
    std::vector<int> vsel(p);
    std::iota(vsel.begin(), vsel.end(), 1);
    while (true) {
      std::vector<int> carrier;
      for (int cell = 1; cell <= puzzle.cell_count(); ++cell)
        for (int v : vsel)
          if (x[cell - 1] == v) carrier.push_back(cell);

      for (int q = 1; q <= q_max; ++q) {
        int need = p * q;
        if (need > static_cast<int>(carrier.size())) break;
        // all need-subsets of the carrier cells
        std::vector<int> csel(need);
        std::iota(csel.begin(), csel.end(), 0);
        while (true) {
          std::vector<int> J;
          std::uint64_t vals = 0;
          for (int idx : csel) {
            J.push_back(carrier[idx]);
            vals |= std::uint64_t{1} << x[carrier[idx] - 1];
          }
          if (__builtin_popcountll(vals) == p) {
            auto rect = is_rectangle(puzzle, J, p, q);
            if (rect) out.push_back(is_minimal_on(puzzle, x, *rect));
          }
          // next combination
          int i = need - 1;
          while (i >= 0 && csel[i] == static_cast<int>(carrier.size()) - need + i) --i;
          if (i < 0) break;
          ++csel[i];
          for (int j = i + 1; j < need; ++j) csel[j] = csel[j - 1] + 1;
        }
      }

      int i = p - 1;
      while (i >= 0 && vsel[i] == n - p + i + 1) --i;
      if (i < 0) break;
      ++vsel[i];
      for (int j = i + 1; j < p; ++j) vsel[j] = vsel[j - 1] + 1;
    }
  }
  return out;
}

/// Necessary condition for unicity: when the instance is uniquely
/// solvable, every rectangle on which the unique solution is minimal
/// contains a given. Returns true when no violation is found (trivially
/// true when the instance is not uniquely solvable).
inline bool check_rectangle_necessity(const Puzzle& puzzle, int p_max = -1, int q_max = -1) {
  if (p_max < 0) p_max = puzzle.order();
  if (q_max < 0) q_max = puzzle.order();
  SolvabilityVerdict verdict = is_uniquely_solvable(puzzle);
  if (verdict.kind != SolvabilityVerdict::Kind::Unique) return true;
  auto reports = find_minimal_rectangles(puzzle, *verdict.solution, p_max, q_max);
  for (const auto& rep : reports)
    if (rep.minimal && !rep.contains_given) return false;
  return true;
}

}  // namespace sudoku

#endif
