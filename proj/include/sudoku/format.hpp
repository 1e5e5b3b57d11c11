#ifndef SUDOKU_FORMAT_HPP
#define SUDOKU_FORMAT_HPP

#include <cctype>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sudoku/puzzle.hpp"
#include "sudoku/solve.hpp"

namespace sudoku {

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

namespace detail {

inline std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::optional<int> square_root(int n) {
  int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (m * m == n) return m;
  return std::nullopt;
}

}  // namespace detail

/// Line-oriented puzzle document:
///   sudoku v1
///   n = <int>
///   perm pi<r> = classical m=<m>      (or: perm pi<r> = [i1 i2 ... i_{n^2}])
///   given <cell> <value>
///   grid                              (followed by n rows of digits / '.')
/// '#' starts a comment. Missing perm lines default to the classical
/// permutations when n is a perfect square.
inline Puzzle parse_puzzle(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool header_seen = false;
  int n = 0;
  std::array<std::optional<Permutation>, 3> perms;
  std::vector<std::pair<int, int>> givens;
  int grid_rows_left = 0;
  int grid_row = 0;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line = line.substr(0, pos);
    line = detail::strip(line);
    if (line.empty()) continue;

    if (grid_rows_left > 0) {
      std::vector<char> symbols;
      for (char c : line) {
        if (c == ' ' || c == '\t' || c == '|' || c == '-' || c == '+') continue;
        symbols.push_back(c);
      }
      if (symbols.empty()) continue;  // block separator line
      ++grid_row;
      --grid_rows_left;
      if (static_cast<int>(symbols.size()) != n)
        throw ParseError(lineno, "grid row must have exactly n symbols");
      for (int col = 1; col <= n; ++col) {
        char c = symbols[col - 1];
        if (c == '.') continue;
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw ParseError(lineno, "invalid grid symbol");
        int v = c - '0';
        if (v < 1 || v > n) throw ParseError(lineno, "grid value out of range");
        givens.emplace_back((grid_row - 1) * n + col, v);
      }
      continue;
    }

    if (!header_seen) {
      if (line != "sudoku v1") throw ParseError(lineno, "expected header 'sudoku v1'");
      header_seen = true;
      continue;
    }

    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "n") {
      std::string eq;
      ls >> eq >> n;
      if (eq != "=" || ls.fail() || n < 2) throw ParseError(lineno, "expected 'n = <int>'");
    } else if (word == "perm") {
      if (n == 0) throw ParseError(lineno, "perm line before 'n ='");
      std::string name, eq, kind;
      ls >> name >> eq >> kind;
      if (eq != "=" || name.size() != 3 || name.substr(0, 2) != "pi")
        throw ParseError(lineno, "expected 'perm pi<r> = ...'");
      int r = name[2] - '0';
      if (r < 1 || r > 3) throw ParseError(lineno, "permutation index must be 1..3");
      if (kind == "classical") {
        std::string mspec;
        ls >> mspec;
        if (mspec.rfind("m=", 0) != 0) throw ParseError(lineno, "expected 'classical m=<m>'");
        int m = std::stoi(mspec.substr(2));
        if (m * m != n) throw ParseError(lineno, "classical m^2 != n");
        perms[r - 1] = classical_permutations(m)[r - 1];
      } else if (!kind.empty() && kind[0] == '[') {
        std::string rest = line.substr(line.find('['));
        if (rest.back() != ']') throw ParseError(lineno, "unterminated permutation list");
        std::istringstream nums(rest.substr(1, rest.size() - 2));
        std::vector<int> image;
        int v;
        while (nums >> v) image.push_back(v);
        if (static_cast<int>(image.size()) != n * n)
          throw ParseError(lineno, "permutation list must have n^2 entries");
        try {
          perms[r - 1] = Permutation(std::move(image));
        } catch (const std::invalid_argument& e) {
          throw ParseError(lineno, e.what());
        }
      } else {
        throw ParseError(lineno, "expected 'classical m=<m>' or '[...]'");
      }
    } else if (word == "given") {
      if (n == 0) throw ParseError(lineno, "given line before 'n ='");
      int cell, value;
      ls >> cell >> value;
      if (ls.fail()) throw ParseError(lineno, "expected 'given <cell> <value>'");
      if (cell < 1 || cell > n * n) throw ParseError(lineno, "given cell out of range");
      if (value < 1 || value > n) throw ParseError(lineno, "given value out of range");
      givens.emplace_back(cell, value);
    } else if (word == "grid") {
      if (n == 0) throw ParseError(lineno, "grid before 'n ='");
      if (n > 9) throw ParseError(lineno, "grid blocks support n <= 9 only");
      grid_rows_left = n;
      grid_row = 0;
    } else {
      throw ParseError(lineno, "unknown directive '" + word + "'");
    }
  }
  if (!header_seen) throw ParseError(1, "empty document");
  if (n == 0) throw ParseError(lineno, "missing 'n ='");
  if (grid_rows_left > 0) throw ParseError(lineno, "grid block ended early");

  if (!perms[0] && !perms[1] && !perms[2]) {
    auto m = detail::square_root(n);
    if (!m) throw ParseError(lineno, "no permutations given and n is not a square");
    auto p = classical_permutations(*m);
    perms = {p[0], p[1], p[2]};
  }
  for (int r = 0; r < 3; ++r)
    if (!perms[r]) throw ParseError(lineno, "missing permutation pi" + std::to_string(r + 1));

  try {
    return Puzzle(n, *perms[0], *perms[1], *perms[2], Givens(std::move(givens), n));
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
}

/// True iff the puzzle's constraint sets are exactly the classical rows,
/// columns and blocks for n = m^2.
inline bool is_classical(const Puzzle& puzzle) {
  auto m = detail::square_root(puzzle.order());
  if (!m) return false;
  auto ref = classical_puzzle(*m);
  for (int r = 1; r <= 3; ++r)
    if (puzzle.sets(r) != ref.sets(r)) return false;
  return true;
}

namespace detail {

inline std::string render_cells(const Puzzle& puzzle,
                                const std::vector<int>& values /* 0 = empty */) {
  int n = puzzle.order();
  std::ostringstream out;
  if (is_classical(puzzle) && n <= 9) {
    int m = *square_root(n);
    for (int row = 1; row <= n; ++row) {
      std::string line;
      for (int col = 1; col <= n; ++col) {
        if (col > 1) line += (col - 1) % m == 0 ? " | " : " ";
        int v = values[(row - 1) * n + col - 1];
        line += v == 0 ? '.' : static_cast<char>('0' + v);
      }
      if (row > 1 && (row - 1) % m == 0) {
        std::string sep = line;
        for (char& c : sep) c = c == '|' ? '+' : '-';
        out << sep << "\n";
      }
      out << line << "\n";
    }
  } else {
    for (int i = 1; i <= puzzle.cell_count(); ++i)
      if (values[i - 1] != 0) out << i << ":" << values[i - 1] << "\n";
  }
  return out.str();
}

}  // namespace detail

/// Grid rendering of the givens; index:value listing for non-classical
/// layouts.
inline std::string render_grid(const Puzzle& puzzle) {
  std::vector<int> values(puzzle.cell_count(), 0);
  for (auto [cell, value] : puzzle.givens().pairs()) values[cell - 1] = value;
  return detail::render_cells(puzzle, values);
}

/// Grid rendering of an assignment.
inline std::string render_grid(const Puzzle& puzzle, const Assignment& x) {
  std::vector<int> values(x.data(), x.data() + x.size());
  return detail::render_cells(puzzle, values);
}

}  // namespace sudoku

#endif
