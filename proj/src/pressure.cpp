#include "nds/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_config(const NdSystem& sys, const TargetSet& Z,
                     const EstimatorConfig& cfg) {
  if (cfg.eps_schedule.empty()) throw ConfigError("empty radius schedule");
  double prev = kInf;
  for (double e : cfg.eps_schedule) {
    if (!(e > 0.0)) throw ConfigError("radii must be positive");
    if (!(e < prev)) throw ConfigError("radius schedule must descend");
    prev = e;
  }
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min)
    throw ConfigError("bad depth range");
  if (Z.k < 0 || Z.k > sys.level_limit())
    throw LevelRangeError("target level outside the system");
}

// Ratio statistic for symbolic levels: log value per resolved symbol. The
// liminf/limsup structure lives in the ratios, so the tail extremum is taken
// over the parity-matched depth grid.
void symbolic_diag(const NdSystem& sys, const PotentialSeq& f,
                   const TargetSet& Z, const EstimatorConfig& cfg,
                   int depth_cap, bool packing, EpsDiag& diag) {
  auto grid = tail_depth_grid(cfg.n_min, std::min(cfg.n_max, depth_cap));
  double best = packing ? -kInf : kInf;
  for (int n : grid) {
    DepthValue dv = packing
                        ? depth_packing_value(sys, f, Z, n, diag.eps)
                        : depth_cover_value(sys, f, Z, n, diag.eps,
                                            WeightMode::Center);
    diag.depths.push_back(dv);
    if (dv.saturated) {
      diag.saturated_truncated = true;
      continue;
    }
    diag.window.push_back(n);
    diag.exact_route = diag.exact_route && dv.exact;
    double v = dv.log_value / double(std::max(1, dv.m));
    best = packing ? std::max(best, v) : std::min(best, v);
  }
  if (diag.window.empty())
    throw ConfigError("all depths saturated the carrier; raise eps or "
                      "refine the truncation");
  diag.exponent = best;
  const DepthValue& deep = diag.depths.back();
  diag.s_star_raw = deep.log_value / double(std::max(1, deep.n));
}

// Slope statistic for grid and cloud levels: the per-depth log values carry
// an eps-dependent additive constant, so exponents are read from sliding
// window differences over the unsaturated depths.
void ordered_diag(const NdSystem& sys, const PotentialSeq& f,
                  const TargetSet& Z, const EstimatorConfig& cfg,
                  int depth_cap, bool packing, EpsDiag& diag) {
  int n_hi = std::min(cfg.n_max, depth_cap);
  std::vector<int> ts;
  std::vector<double> logs;
  for (int t = cfg.n_min; t <= n_hi; ++t) {
    DepthValue dv = packing
                        ? depth_packing_value(sys, f, Z, t, diag.eps)
                        : depth_cover_value(sys, f, Z, t, diag.eps,
                                            WeightMode::Center);
    diag.depths.push_back(dv);
    // Balls narrower than two grid cells read off cell-count parity rather
    // than scaling, so they end the usable range along with saturation.
    if (dv.saturated || (dv.extent >= 0 && dv.extent < 2)) {
      diag.saturated_truncated = true;
      break;
    }
    diag.exact_route = diag.exact_route && dv.exact;
    ts.push_back(t);
    logs.push_back(dv.log_value);
  }
  if (int(ts.size()) < cfg.min_window + 1)
    throw ConfigError("too few unsaturated depths for a slope window; "
                      "raise eps or n_max");
  int span = ts.back() - ts.front();
  int w = std::max(cfg.min_window, span / 2);
  double best = packing ? -kInf : kInf;
  for (size_t i = 0; i < ts.size(); ++i) {
    size_t j = i + size_t(w);
    if (j >= ts.size()) break;
    double slope = (logs[j] - logs[i]) / double(ts[j] - ts[i]);
    diag.window.push_back(ts[i]);
    best = packing ? std::max(best, slope) : std::min(best, slope);
  }
  diag.exponent = best;
  diag.s_star_raw = logs.back() / double(ts.back());
}

PressureEstimate estimate(const NdSystem& sys, const PotentialSeq& f,
                          const TargetSet& Z, const EstimatorConfig& cfg,
                          bool packing) {
  validate_config(sys, Z, cfg);
  if (f.declared_unbounded)
    throw UnsupportedError("pressure needs a bounded potential");
  int depth_cap = sys.level_limit() - Z.k + 1;
  const SpaceLevel& lv = sys.level(Z.k);

  PressureEstimate est;
  switch (lv.kind()) {
    case SpaceKind::SymbolicLevel: est.route = "symbolic"; break;
    case SpaceKind::IntervalGrid: est.route = "grid"; break;
    case SpaceKind::FinitePointCloud: est.route = "cloud"; break;
  }

  for (double eps : cfg.eps_schedule) {
    EpsDiag diag;
    diag.eps = eps;
    if (lv.kind() == SpaceKind::SymbolicLevel)
      symbolic_diag(sys, f, Z, cfg, depth_cap, packing, diag);
    else
      ordered_diag(sys, f, Z, cfg, depth_cap, packing, diag);
    est.per_eps.push_back(std::move(diag));
    size_t m = est.per_eps.size();
    if (m >= 2) {
      est.grid_slack = std::abs(est.per_eps[m - 1].exponent -
                                est.per_eps[m - 2].exponent);
      if (est.grid_slack <= cfg.plateau_tol) break;
    }
  }
  est.value = est.per_eps.back().exponent;
  est.plateau = est.per_eps.size() < 2 || est.grid_slack <= cfg.plateau_tol;
  for (const auto& d : est.per_eps)
    est.truncation_flagged = est.truncation_flagged || d.saturated_truncated;
  return est;
}

}  // namespace

std::vector<int> tail_depth_grid(int n_min, int n_max) {
  if (n_min < 1 || n_max < n_min) throw ConfigError("bad depth range");
  int lo = std::max(n_min, n_max / 2);
  std::vector<int> g;
  for (int n = n_max; n >= lo; n -= 2) g.push_back(n);
  std::reverse(g.begin(), g.end());
  return g;
}

EstimatorConfig default_config(const NdSystem& sys) {
  EstimatorConfig cfg;
  int depth_cap = sys.level_limit() + 1;
  switch (sys.level(0).kind()) {
    case SpaceKind::SymbolicLevel:
      cfg.eps_schedule = {0.99, 0.80};
      cfg.n_max = std::min(12, depth_cap - 1);
      break;
    case SpaceKind::IntervalGrid:
      cfg.eps_schedule = {0.1, 0.05, 0.025};
      cfg.n_max = std::min(14, depth_cap);
      break;
    case SpaceKind::FinitePointCloud:
      cfg.eps_schedule = {0.1, 0.05};
      cfg.n_max = std::min(8, depth_cap);
      break;
  }
  return cfg;
}

PressureEstimate bowen_pressure(const NdSystem& sys, const PotentialSeq& f,
                                const TargetSet& Z,
                                const EstimatorConfig& cfg) {
  return estimate(sys, f, Z, cfg, false);
}

PressureEstimate packing_pressure(const NdSystem& sys, const PotentialSeq& f,
                                  const TargetSet& Z,
                                  const EstimatorConfig& cfg) {
  return estimate(sys, f, Z, cfg, true);
}

double bowen_entropy(const NdSystem& sys, const TargetSet& Z,
                     const EstimatorConfig& cfg) {
  return bowen_pressure(sys, zero_potential(), Z, cfg).value;
}

double packing_entropy(const NdSystem& sys, const TargetSet& Z,
                       const EstimatorConfig& cfg) {
  return packing_pressure(sys, zero_potential(), Z, cfg).value;
}

double critical_exponent(const std::function<double(double)>& value_fn,
                         double s_lo, double s_hi, double tol) {
  if (!(s_lo < s_hi)) throw ConfigError("empty bracket");
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (value_fn(s_lo) < 1.0 || value_fn(s_hi) > 1.0)
    throw BracketError("value function does not cross 1 on the bracket");
  double lo = s_lo, hi = s_hi;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (value_fn(mid) >= 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace nds
