#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sudoku/consistency.hpp"
#include "sudoku/format.hpp"
#include "sudoku/puzzle.hpp"
#include "sudoku/rectangles.hpp"
#include "sudoku/reduced.hpp"
#include "sudoku/solve.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> assignment_vector(const sudoku::Assignment& x) {
  return std::vector<int>(x.data(), x.data() + x.size());
}

json report_json(const sudoku::MinimalityReport& rep) {
  return json{{"p", rep.rectangle.p},
              {"q", rep.rectangle.q},
              {"cells", rep.rectangle.cells},
              {"witnesses",
               {rep.rectangle.witnesses[0], rep.rectangle.witnesses[1],
                rep.rectangle.witnesses[2]}},
              {"values", rep.value_set},
              {"minimal", rep.minimal},
              {"contains_given", rep.contains_given}};
}

int run(int argc, char** argv) {
  CLI::App app{"Generalized Sudoku feasibility and unicity analysis"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output (schema v1)");

  std::string input;
  long long limit = 1000000;
  bool no_limit = false;
  bool strict = false;
  int cell_flag = 0;
  int budget = 8;
  int pmax = 0, qmax = 0;
  std::string other_path;
  std::string cells_spec;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", input, "puzzle document")->required();
  };

  auto* solve = app.add_subcommand("solve", "find the first solution");
  add_input(solve);
  solve->add_flag("--strict", strict, "exit 1 when unsolvable");

  auto* enumerate = app.add_subcommand("enumerate", "list solutions");
  add_input(enumerate);
  enumerate->add_option("--limit", limit, "solution cap (default 10^6)");
  enumerate->add_flag("--no-limit", no_limit, "exhaustive enumeration");

  auto* check = app.add_subcommand("check-unique", "unicity verdict with witness");
  add_input(check);
  check->add_flag("--strict", strict, "exit 1 unless uniquely solvable");

  auto* ucells = app.add_subcommand("unicity-cells", "unicity cells and small base sets");
  add_input(ucells);
  ucells->add_option("--cell", cell_flag, "restrict to one cell");
  ucells->add_option("--budget", budget, "growth rounds for the base-set search");

  auto* rects = app.add_subcommand("rectangles", "minimal rectangles of a solution");
  add_input(rects);
  rects->add_option("--pmax", pmax, "max p (exhaustive search is costly for n > 4)");
  rects->add_option("--qmax", qmax, "max q (exhaustive search is costly for n > 4)");

  auto* dtau = app.add_subcommand("derive-tau", "permutation between two solutions");
  add_input(dtau);
  dtau->add_option("--other", other_path, "document whose solution is tau(x)")->required();

  auto* reduce = app.add_subcommand("reduce", "reduced problem induced by a base set");
  add_input(reduce);
  reduce->add_option("--cells", cells_spec, "comma-separated cell list")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  sudoku::Puzzle puzzle = sudoku::parse_puzzle(read_file(input));
  int n = puzzle.order();
  json out{{"schema", "v1"}};

  if (*solve) {
    auto s = sudoku::enumerate_solutions(puzzle, 1);
    if (s.solutions.empty()) {
      out["status"] = "unsolvable";
      std::cout << (as_json ? out.dump(2) + "\n" : "unsolvable\n");
      return strict ? 1 : 0;
    }
    out["status"] = "solved";
    out["solution"] = assignment_vector(s.solutions[0]);
    if (as_json)
      std::cout << out.dump(2) << "\n";
    else
      std::cout << sudoku::render_grid(puzzle, s.solutions[0]);
    return 0;
  }

  if (*enumerate) {
    auto s = sudoku::enumerate_solutions(
        puzzle, no_limit ? std::nullopt : std::optional<long long>(limit));
    out["count"] = s.solutions.size();
    out["exhausted"] = s.exhausted;
    if (as_json) {
      out["solutions"] = json::array();
      for (const auto& x : s.solutions) out["solutions"].push_back(assignment_vector(x));
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << s.solutions.size() << " solution(s), exhausted="
                << (s.exhausted ? "true" : "false") << "\n";
      for (const auto& x : s.solutions) std::cout << sudoku::render_grid(puzzle, x) << "\n";
    }
    return 0;
  }

  if (*check) {
    auto verdict = sudoku::is_uniquely_solvable(puzzle);
    using Kind = sudoku::SolvabilityVerdict::Kind;
    if (verdict.kind == Kind::Unsolvable) {
      out["verdict"] = "unsolvable";
      std::cout << (as_json ? out.dump(2) + "\n" : "unsolvable\n");
      return strict ? 1 : 0;
    }
    if (verdict.kind == Kind::Unique) {
      out["verdict"] = "unique";
      out["solution"] = assignment_vector(*verdict.solution);
      if (as_json)
        std::cout << out.dump(2) << "\n";
      else
        std::cout << "unique\n" << sudoku::render_grid(puzzle, *verdict.solution);
      return 0;
    }
    auto witness = sudoku::find_unicity_witness(puzzle, *verdict.solution);
    out["verdict"] = "multiple";
    out["solution"] = assignment_vector(*verdict.solution);
    out["tau"] = witness->tau.cycle_string();
    out["alternative"] = assignment_vector(witness->alternative);
    if (as_json)
      std::cout << out.dump(2) << "\n";
    else
      std::cout << "multiple\ntau = " << witness->tau.cycle_string() << "\n"
                << sudoku::render_grid(puzzle, *verdict.solution) << "---\n"
                << sudoku::render_grid(puzzle, witness->alternative);
    return strict ? 1 : 0;
  }

  if (*ucells) {
    std::vector<int> targets;
    if (cell_flag > 0)
      targets.push_back(cell_flag);
    else
      for (int i = 1; i <= puzzle.cell_count(); ++i) targets.push_back(i);
    out["cells"] = json::array();
    for (int i : targets) {
      auto found = sudoku::find_small_base_set(puzzle, i, budget);
      json entry{{"cell", i}};
      std::ostringstream line;
      line << "cell " << i << ": ";
      if (!found) {
        entry["unique"] = false;
        line << "no certificate within budget";
      } else if (found->second == 0) {
        entry["vacuous"] = true;
        line << "vacuous (reduced problem unsolvable), base set size "
             << found->first.size();
      } else {
        entry["unique"] = true;
        entry["value"] = found->second;
        entry["base_set"] = found->first.cells();
        line << "value " << found->second << ", base set {";
        for (std::size_t k = 0; k < found->first.cells().size(); ++k)
          line << (k ? "," : "") << found->first.cells()[k];
        line << "}";
      }
      out["cells"].push_back(entry);
      if (!as_json) std::cout << line.str() << "\n";
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*rects) {
    if (pmax <= 0) pmax = n <= 4 ? n : 3;
    if (qmax <= 0) qmax = n <= 4 ? n : 3;
    auto s = sudoku::enumerate_solutions(puzzle, 1);
    if (s.solutions.empty()) {
      out["status"] = "unsolvable";
      std::cout << (as_json ? out.dump(2) + "\n" : "unsolvable\n");
      return 0;
    }
    auto reports = sudoku::find_minimal_rectangles(puzzle, s.solutions[0], pmax, qmax);
    out["rectangles"] = json::array();
    for (const auto& rep : reports) out["rectangles"].push_back(report_json(rep));
    if (as_json) {
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << reports.size() << " minimal rectangle(s)\n";
      for (const auto& rep : reports) {
        std::cout << rep.rectangle.p << "-" << rep.rectangle.q << " cells {";
        for (std::size_t k = 0; k < rep.rectangle.cells.size(); ++k)
          std::cout << (k ? "," : "") << rep.rectangle.cells[k];
        std::cout << "} values {";
        for (std::size_t k = 0; k < rep.value_set.size(); ++k)
          std::cout << (k ? "," : "") << rep.value_set[k];
        std::cout << "} given=" << (rep.contains_given ? "yes" : "no") << "\n";
      }
    }
    return 0;
  }

  if (*dtau) {
    sudoku::Puzzle other = sudoku::parse_puzzle(read_file(other_path));
    if (other.order() != n) throw std::runtime_error("derive-tau: order mismatch");
    auto sx = sudoku::enumerate_solutions(puzzle, 1);
    auto sy = sudoku::enumerate_solutions(other, 1);
    if (sx.solutions.empty() || sy.solutions.empty())
      throw std::runtime_error("derive-tau: both documents must be solvable");
    auto tau =
        sudoku::derive_tau(sx.solutions[0], sy.solutions[0], puzzle.pi(1), n);
    auto rep = sudoku::make_consistency_report(puzzle, tau, sx.solutions[0]);
    out["tau"] = tau.cycle_string();
    out["pi1_consistent"] = rep.pi_consistent[0];
    out["pi2_x_consistent"] = rep.pi_x_consistent[1];
    out["pi3_x_consistent"] = rep.pi_x_consistent[2];
    out["fixes_givens"] = rep.fixes_givens;
    out["moves_x"] = rep.moves_x;
    if (as_json)
      std::cout << out.dump(2) << "\n";
    else
      std::cout << "tau = " << tau.cycle_string() << "\n"
                << "pi1-consistent: " << (rep.pi_consistent[0] ? "yes" : "no") << "\n"
                << "pi2-x-consistent: " << (rep.pi_x_consistent[1] ? "yes" : "no") << "\n"
                << "pi3-x-consistent: " << (rep.pi_x_consistent[2] ? "yes" : "no") << "\n"
                << "fixes givens: " << (rep.fixes_givens ? "yes" : "no") << "\n";
    return 0;
  }

  if (*reduce) {
    std::vector<int> cells;
    std::istringstream cs(cells_spec);
    std::string tok;
    while (std::getline(cs, tok, ',')) cells.push_back(std::stoi(tok));
    sudoku::BaseSet J(std::move(cells), puzzle.cell_count());
    auto rp = sudoku::build_reduced(puzzle, J);
    auto s = sudoku::enumerate_reduced(rp, 1000);
    out["p"] = rp.p;
    out["rows"] = {rp.B[0].rows(), rp.B[1].rows(), rp.B[2].rows()};
    out["eq_rows"] = rp.Beq.rows();
    out["g_prime"] = std::vector<int>(rp.g_prime.data(), rp.g_prime.data() + rp.g_prime.size());
    out["count"] = s.solutions.size();
    out["exhausted"] = s.exhausted;
    if (as_json) {
      out["solutions"] = json::array();
      for (const auto& z : s.solutions) out["solutions"].push_back(assignment_vector(z));
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "p=" << rp.p << " B1:" << rp.B[0].rows() << " B2:" << rp.B[1].rows()
                << " B3:" << rp.B[2].rows() << " Beq:" << rp.Beq.rows() << " g'=[";
      for (int k = 0; k < rp.g_prime.size(); ++k)
        std::cout << (k ? "," : "") << rp.g_prime[k];
      std::cout << "]\n" << s.solutions.size() << " reduced solution(s), exhausted="
                << (s.exhausted ? "true" : "false") << "\n";
      for (const auto& z : s.solutions) {
        for (int k = 0; k < z.size(); ++k) std::cout << (k ? " " : "") << z[k];
        std::cout << "\n";
      }
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sudoku::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
