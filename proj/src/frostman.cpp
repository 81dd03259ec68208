#include "nds/frostman.hpp"

#include <cmath>

#include "nds/simplex.hpp"

namespace nds {

FrostmanReport frostman_dual(const NdSystem& sys, const PotentialSeq& f,
                             const std::vector<Point>& Z, int k, double s,
                             int N, int n_max, double eps) {
  CandidateFamily fam =
      build_candidate_family(sys, f, Z, k, N, n_max, eps, false);
  std::vector<char> hit(fam.Z.size(), 0);
  for (const auto& b : fam.balls)
    for (int i : b.members) hit[size_t(i)] = 1;
  for (size_t i = 0; i < fam.Z.size(); ++i)
    if (!hit[i])
      throw InfeasibleError("a target point misses every candidate ball, so "
                            "the dual is unbounded");

  std::vector<double> w;
  w.reserve(fam.balls.size());
  for (const auto& b : fam.balls)
    w.push_back(std::exp(-double(b.spec.n) * s + b.log_weight_sup));

  if (int(fam.Z.size()) > 2000)
    throw ConfigError("target too large for the LP");
  LpProblem dual;
  dual.nvars = int(fam.Z.size());
  dual.c.assign(fam.Z.size(), -1.0);  // maximize total mass
  for (size_t i = 0; i < fam.balls.size(); ++i) {
    LpProblem::Row row;
    row.a.assign(fam.Z.size(), 0.0);
    for (int z : fam.balls[i].members) row.a[size_t(z)] = 1.0;
    row.b = w[i];
    row.rel = '<';
    dual.rows.push_back(std::move(row));
  }
  LpResult res = solve_lp(dual);
  if (res.status == LpResult::Status::Unbounded)
    throw InfeasibleError("dual unbounded: some point is in no ball");
  if (res.status != LpResult::Status::Optimal)
    throw ConfigError("dual relaxation did not converge");

  FrostmanReport rep;
  rep.dual_objective = -res.objective;
  rep.cover_value =
      weighted_cover_value(sys, f, Z, k, s, N, n_max, eps).upper_bound;
  rep.gap = std::abs(rep.cover_value - rep.dual_objective);
  if (rep.dual_objective <= 1e-12)
    throw DegenerateError("total mass vanishes at this exponent");

  rep.measure.resize(fam.Z.size());
  for (size_t i = 0; i < fam.Z.size(); ++i)
    rep.measure[i] = res.x[i] / rep.dual_objective;
  for (size_t i = 0; i < fam.balls.size(); ++i) {
    double mass = 0.0;
    for (int z : fam.balls[i].members) mass += rep.measure[size_t(z)];
    double excess = mass - w[i] / rep.dual_objective;
    rep.max_constraint_violation =
        std::max(rep.max_constraint_violation, excess);
  }
  rep.satisfied = rep.gap <= 1e-6 && rep.max_constraint_violation <= 1e-9;
  return rep;
}

}  // namespace nds
