#pragma once

#include <span>
#include <vector>

#include "nds/system.hpp"

namespace nds {

struct NetReport {
  std::vector<Point> points;
  // Separated sets: no carrier point of Z can be added without breaking the
  // separation (equivalently, every z in Z is within eps of a chosen point).
  // Spanning sets: the depth-n open eps-balls around the chosen points cover
  // Z. Both flags are verified against Z after the greedy pass.
  bool certified = false;
};

// Greedy maximal subset of Z with pairwise Bowen distance >= eps at depth n.
// Scan order is the order of Z, which keeps results reproducible.
NetReport separated_set(const NdSystem& sys, std::span<const Point> Z, int k,
                        int n, double eps);

// Greedy first-uncovered spanning set: centers taken from Z, open balls.
NetReport spanning_set(const NdSystem& sys, std::span<const Point> Z, int k,
                       int n, double eps);

}  // namespace nds
