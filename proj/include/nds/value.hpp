#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nds/system.hpp"

namespace nds {

// The set Z that cover/packing values are taken over. Exactly one shape is
// active: the full level carrier, a union of symbolic cylinders given by
// their (pairwise non-nested) prefix words, or an explicit point list.
struct TargetSet {
  int k = 0;
  bool full = true;
  std::vector<Word> cylinders;
  std::vector<Point> points;
  std::string label = "full";
};

TargetSet full_target(std::string label = "full");
TargetSet cylinder_target(std::vector<Word> prefixes, std::string label = "");
TargetSet point_target(std::vector<Point> pts, std::string label = "points");

// Materialize the target as points (throws UnsupportedError when the level
// is too large to enumerate).
std::vector<Point> target_points(const NdSystem& sys, const TargetSet& Z);

// Word depth m such that every depth-n Bowen ball of this radius on the
// symbolic ultrametric is exactly a depth-m cylinder (m = 0 means the whole
// space).
int symbolic_ball_depth(int n, double eps, bool closed);

// Log of the weighted ball count at a single depth: the family is the
// minimal (N = n fixed) cover of Z, or the maximum-cardinality packing with
// centers in Z, and log_value = ln sum over its balls of exp(S_n f). The
// s-dependence of the Caratheodory sums is applied by callers (subtracting
// s * n), so one sweep serves every s.
struct DepthValue {
  int n = 0;
  int m = 0;  // resolved cylinder depth on symbolic levels, else n
  double log_value = 0.0;
  std::int64_t count = 0;      // -1 when it overflows 64 bits
  std::int64_t extent = -1;    // ball half-width in grid cells, when uniform
  bool saturated = false;      // every ball held exactly one carrier point
  bool exact = true;           // optimal family certified, weights exact
};

enum class WeightMode { Center, Sup };

DepthValue depth_cover_value(const NdSystem& sys, const PotentialSeq& f,
                             const TargetSet& Z, int n, double eps,
                             WeightMode mode);

// Closed balls, centers restricted to Z.
DepthValue depth_packing_value(const NdSystem& sys, const PotentialSeq& f,
                               const TargetSet& Z, int n, double eps);

// Mixed-depth candidate families for the report-level value functions:
// centers form a greedy separated net of Z per depth in [N, n_max].
struct CandidateBall {
  BowenBallSpec spec;
  double log_weight_center = 0.0;
  double log_weight_sup = 0.0;
  std::vector<int> members;  // indices into Z covered by the ball
};

struct CandidateFamily {
  std::vector<CandidateBall> balls;
  std::vector<Point> Z;
  int k = 0;
  bool sup_over_carrier = true;  // sup weights ranged over the whole level
};

CandidateFamily build_candidate_family(const NdSystem& sys,
                                       const PotentialSeq& f,
                                       std::vector<Point> Z, int k, int N,
                                       int n_max, double eps, bool closed);

enum class CoverMode { CenterWeight, SupWeight, Weighted };

struct CoverValueReport {
  double s = 0.0;
  int N = 1;
  int n_max = 1;
  double eps = 1.0;
  CoverMode mode = CoverMode::CenterWeight;
  double lower_bound = 0.0;  // fractional LP optimum
  double upper_bound = 0.0;  // best cover found
  bool exact = false;        // upper bound proved optimal
  std::vector<BowenBallSpec> witness;
  std::vector<double> witness_coeffs;  // Weighted mode only
};

// Best (N, eps)-cover of Z over the candidate family. Throws
// InfeasibleError when no family covers Z (n_max too small for this eps).
CoverValueReport cover_value(const NdSystem& sys, const PotentialSeq& f,
                             const std::vector<Point>& Z, int k, double s,
                             int N, int n_max, double eps, CoverMode mode);

// Fractional relaxation with sup weights; witness_coeffs holds the optimal
// coefficients.
CoverValueReport weighted_cover_value(const NdSystem& sys,
                                      const PotentialSeq& f,
                                      const std::vector<Point>& Z, int k,
                                      double s, int N, int n_max, double eps);

struct PackingValueReport {
  double s = 0.0;
  int N = 1;
  int n_max = 1;
  double eps = 1.0;
  double value = 0.0;  // greedy max-weight disjoint family (a lower bound)
  std::vector<BowenBallSpec> witness;
  std::vector<std::size_t> part_sizes;  // decomposition actually used
};

// Max-weight pairwise disjoint family of closed balls with centers in Z and
// depths in [N, n_max], summed over the parts of the decomposition (indices
// into Z; default one part holding everything).
PackingValueReport packing_value(const NdSystem& sys, const PotentialSeq& f,
                                 const std::vector<Point>& Z, int k, double s,
                                 int N, int n_max, double eps,
                                 std::vector<std::vector<int>> parts = {});

// Exact set-disjointness of two Bowen balls over the system's carriers.
bool balls_disjoint(const NdSystem& sys, const BowenBallSpec& a,
                    const BowenBallSpec& b);

}  // namespace nds
