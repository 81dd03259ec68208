#include "nds/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nds/errors.hpp"

namespace nds {

namespace {

constexpr double kPivTol = 1e-9;
constexpr double kFeasTol = 1e-7;

struct Tableau {
  int m = 0, n = 0;               // rows, structural+slack+artificial cols
  std::vector<double> t;          // (m+1) x (n+1), last row = objective
  std::vector<int> basis;

  double& at(int i, int j) { return t[size_t(i) * size_t(n + 1) + size_t(j)]; }

  void pivot(int pr, int pc) {
    double pv = at(pr, pc);
    for (int j = 0; j <= n; ++j) at(pr, j) /= pv;
    for (int i = 0; i <= m; ++i) {
      if (i == pr) continue;
      double f = at(i, pc);
      if (f == 0.0) continue;
      for (int j = 0; j <= n; ++j) at(i, j) -= f * at(pr, j);
    }
    basis[size_t(pr)] = pc;
  }

  // Returns false when the current objective is unbounded below.
  bool run(long max_iter, bool& hit_limit) {
    long iter = 0;
    while (true) {
      if (++iter > max_iter) {
        hit_limit = true;
        return true;
      }
      bool bland = iter > max_iter / 2;
      int pc = -1;
      double best = -kPivTol;
      for (int j = 0; j < n; ++j) {
        double rc = at(m, j);
        if (rc < (bland ? -kPivTol : best)) {
          pc = j;
          if (bland) break;
          best = rc;
        }
      }
      if (pc < 0) return true;  // optimal
      int pr = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        double a = at(i, pc);
        if (a > kPivTol) {
          double r = at(i, n) / a;
          if (r < ratio - 1e-12 ||
              (r < ratio + 1e-12 && pr >= 0 &&
               basis[size_t(i)] < basis[size_t(pr)])) {
            ratio = r;
            pr = i;
          }
        }
      }
      if (pr < 0) return false;  // unbounded
      pivot(pr, pc);
    }
  }
};

}  // namespace

LpResult solve_lp(const LpProblem& p) {
  LpResult res;
  int m = int(p.rows.size());
  if (p.nvars <= 0 || int(p.c.size()) != p.nvars)
    throw ConfigError("lp shape mismatch");
  for (auto& r : p.rows)
    if (int(r.a.size()) != p.nvars) throw ConfigError("lp row shape mismatch");

  // Normalize rows to b >= 0, count extra columns.
  std::vector<LpProblem::Row> rows = p.rows;
  for (auto& r : rows) {
    if (r.b < 0) {
      for (double& v : r.a) v = -v;
      r.b = -r.b;
      r.rel = r.rel == '<' ? '>' : (r.rel == '>' ? '<' : '=');
    }
  }
  int nslack = 0, nart = 0;
  for (auto& r : rows) {
    if (r.rel == '<' || r.rel == '>') ++nslack;
    if (r.rel == '>' || r.rel == '=') ++nart;
  }
  Tableau tb;
  tb.m = m;
  tb.n = p.nvars + nslack + nart;
  tb.t.assign(size_t(tb.m + 1) * size_t(tb.n + 1), 0.0);
  tb.basis.assign(size_t(m), -1);

  int scol = p.nvars, acol = p.nvars + nslack;
  std::vector<int> art_rows;
  for (int i = 0; i < m; ++i) {
    auto& r = rows[size_t(i)];
    for (int j = 0; j < p.nvars; ++j) tb.at(i, j) = r.a[size_t(j)];
    tb.at(i, tb.n) = r.b;
    if (r.rel == '<') {
      tb.at(i, scol) = 1.0;
      tb.basis[size_t(i)] = scol++;
    } else if (r.rel == '>') {
      tb.at(i, scol++) = -1.0;
    }
    if (r.rel == '>' || r.rel == '=') {
      tb.at(i, acol) = 1.0;
      tb.basis[size_t(i)] = acol++;
      art_rows.push_back(i);
    }
  }

  long cap = 400L * (tb.m + tb.n + 10);
  bool hit_limit = false;

  if (nart > 0) {
    // Phase 1: minimize the sum of artificials.
    for (int j = p.nvars + nslack; j < tb.n; ++j) tb.at(m, j) = 1.0;
    for (int i : art_rows)
      for (int j = 0; j <= tb.n; ++j) tb.at(m, j) -= tb.at(i, j);
    if (!tb.run(cap, hit_limit)) {
      res.status = LpResult::Status::Unbounded;
      return res;
    }
    if (hit_limit) {
      res.status = LpResult::Status::IterLimit;
      return res;
    }
    if (std::abs(tb.at(m, tb.n)) > kFeasTol) {
      res.status = LpResult::Status::Infeasible;
      return res;
    }
    // Pivot remaining artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (tb.basis[size_t(i)] >= p.nvars + nslack) {
        for (int j = 0; j < p.nvars + nslack; ++j) {
          if (std::abs(tb.at(i, j)) > kPivTol) {
            tb.pivot(i, j);
            break;
          }
        }
      }
    }
  }

  // Phase 2: original objective expressed over the current basis.
  for (int j = 0; j <= tb.n; ++j) tb.at(m, j) = 0.0;
  for (int j = 0; j < p.nvars; ++j) tb.at(m, j) = p.c[size_t(j)];
  // Forbid artificials from re-entering.
  for (int j = p.nvars + nslack; j < tb.n; ++j) tb.at(m, j) = 1e30;
  for (int i = 0; i < m; ++i) {
    int bj = tb.basis[size_t(i)];
    double cb = bj < p.nvars ? p.c[size_t(bj)]
                             : (bj >= p.nvars + nslack ? 1e30 : 0.0);
    if (cb == 0.0) continue;
    for (int j = 0; j <= tb.n; ++j) tb.at(m, j) -= cb * tb.at(i, j);
  }
  if (!tb.run(cap, hit_limit)) {
    res.status = LpResult::Status::Unbounded;
    return res;
  }
  if (hit_limit) {
    res.status = LpResult::Status::IterLimit;
    return res;
  }

  res.x.assign(size_t(p.nvars), 0.0);
  for (int i = 0; i < m; ++i) {
    int bj = tb.basis[size_t(i)];
    if (bj >= 0 && bj < p.nvars) res.x[size_t(bj)] = tb.at(i, tb.n);
  }
  res.objective = 0.0;
  for (int j = 0; j < p.nvars; ++j)
    res.objective += p.c[size_t(j)] * res.x[size_t(j)];
  res.status = LpResult::Status::Optimal;
  return res;
}

}  // namespace nds
