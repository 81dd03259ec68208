#pragma once

#include <vector>

#include "nds/value.hpp"

namespace nds {

// Mass-distribution certificate extracted from the dual of the weighted
// cover relaxation: a measure on Z with mu(B_i) <= w_i / C for every
// candidate ball, where C is the dual optimum (equal to the weighted cover
// value by LP duality).
struct FrostmanReport {
  std::vector<double> measure;  // normalized point masses, one per Z point
  double cover_value = 0.0;     // weighted cover optimum
  double dual_objective = 0.0;  // dual optimum before normalization
  double gap = 0.0;             // |primal - dual|
  double max_constraint_violation = 0.0;
  bool satisfied = false;
};

FrostmanReport frostman_dual(const NdSystem& sys, const PotentialSeq& f,
                             const std::vector<Point>& Z, int k, double s,
                             int N, int n_max, double eps);

}  // namespace nds
