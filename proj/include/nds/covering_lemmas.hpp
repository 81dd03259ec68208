#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nds/system.hpp"

namespace nds {

struct SubfamilyReport {
  std::vector<std::size_t> picked;  // indices into the input family
  double expansion = 1.0;           // radius multiplier used for coverage
  bool disjoint = false;            // verified over the carrier sample
  bool covers = false;              // expanded picks cover the family union
  std::size_t checked_points = 0;
};

// Vitali-style selection: balls share (k, n) but carry their own radii.
// Greedy over descending radius keeps a ball when it misses every picked
// ball; the 5x expansions of the picks cover the whole family union.
// Intersection tests and the coverage certificate are evaluated exactly over
// `carrier` (a point set at level k, typically the full level).
SubfamilyReport disjoint_subfamily_5r(const NdSystem& sys,
                                      std::span<const BowenBallSpec> family,
                                      std::span<const Point> carrier);

// Bowen-ball selection: balls share eps but carry their own depths. Greedy
// over ascending depth (bigger balls first); the picked balls expanded to
// 3 eps at their own depths cover the family union.
SubfamilyReport disjoint_subfamily_bowen_3eps(
    const NdSystem& sys, std::span<const BowenBallSpec> family,
    std::span<const Point> carrier);

}  // namespace nds
