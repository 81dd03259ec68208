#pragma once

#include <vector>

namespace nds {

// Dense linear program: minimize c.x subject to row constraints and x >= 0.
// Intended for the cover/packing relaxations, which stay small (at most a
// couple thousand variables); no sparsity, no scaling tricks.
struct LpProblem {
  int nvars = 0;
  std::vector<double> c;
  struct Row {
    std::vector<double> a;
    double b = 0.0;
    char rel = '<';  // '<', '>', '='
  };
  std::vector<Row> rows;
};

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded, IterLimit };
  Status status = Status::IterLimit;
  double objective = 0.0;
  std::vector<double> x;
};

LpResult solve_lp(const LpProblem& p);

}  // namespace nds
