#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nds/value.hpp"

namespace nds {

// Knobs shared by the pressure/entropy estimators. Radii are visited in the
// given (descending) order and refinement stops once two successive radii
// agree within plateau_tol.
struct EstimatorConfig {
  std::vector<double> eps_schedule;
  int n_min = 1;
  int n_max = 12;
  int depth_floor = 1;  // N for the report-level cover/packing values
  double plateau_tol = 0.02;
  double s_tol = 1e-3;
  std::uint64_t seed = 1;
  int mc_samples = 500;
  int min_window = 2;
};

// Per-radius diagnostics: the depth sweep, the depth grid actually used for
// the tail statistic, and the resulting exponent.
struct EpsDiag {
  double eps = 0.0;
  double exponent = 0.0;
  double s_star_raw = 0.0;  // log value over depth at the deepest level
  std::vector<DepthValue> depths;
  std::vector<int> window;
  bool saturated_truncated = false;
  bool exact_route = true;
};

struct PressureEstimate {
  double value = 0.0;
  bool plateau = true;      // successive radii agreed within plateau_tol
  double grid_slack = 0.0;  // gap between the last two radii
  bool truncation_flagged = false;
  std::string route;
  std::vector<EpsDiag> per_eps;
};

// Depths the tail statistics range over: n_max down to max(n_min, n_max/2)
// in steps of two, ascending. Stepping by two keeps the grid on one parity,
// which matters for systems whose level sizes oscillate by parity.
std::vector<int> tail_depth_grid(int n_min, int n_max);

EstimatorConfig default_config(const NdSystem& sys);

// Bowen (cover) pressure of f over Z: per radius, the infimum of the
// normalized log cover values over the tail depth grid; the reported value
// is the smallest-radius exponent.
PressureEstimate bowen_pressure(const NdSystem& sys, const PotentialSeq& f,
                                const TargetSet& Z,
                                const EstimatorConfig& cfg);

// Packing pressure: same sweep with maximal packings and the tail supremum.
PressureEstimate packing_pressure(const NdSystem& sys, const PotentialSeq& f,
                                  const TargetSet& Z,
                                  const EstimatorConfig& cfg);

double bowen_entropy(const NdSystem& sys, const TargetSet& Z,
                     const EstimatorConfig& cfg);
double packing_entropy(const NdSystem& sys, const TargetSet& Z,
                       const EstimatorConfig& cfg);

// Bisection for the crossing value(s) = 1 of a non-increasing value
// function. Throws BracketError unless value(s_lo) >= 1 >= value(s_hi).
double critical_exponent(const std::function<double(double)>& value_fn,
                         double s_lo, double s_hi, double tol);

}  // namespace nds
