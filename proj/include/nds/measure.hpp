#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nds/pressure.hpp"

namespace nds {

// Probability measures the estimators can integrate against: finitely
// supported (atomic) measures on one level, or level-indexed product
// (Bernoulli) measures on symbolic systems.
struct MeasureRep {
  enum class Kind { Atomic, Bernoulli };
  Kind kind = Kind::Atomic;
  std::string label;

  std::vector<Point> atoms;
  std::vector<double> masses;

  std::vector<std::vector<double>> rows;  // one probability row per level

  const std::vector<double>& prob_row(int level) const;
  void validate_against(const NdSystem& sys) const;
};

// Product measure whose row at level k is cycle[k % cycle.size()], expanded
// against the system's alphabets.
MeasureRep bernoulli_measure(const NdSystem& sys,
                             std::vector<std::vector<double>> cycle,
                             std::string label = "");
MeasureRep uniform_bernoulli(const NdSystem& sys);

MeasureRep atomic_measure(std::vector<Point> atoms, std::vector<double> masses,
                          std::string label = "atomic");
MeasureRep dirac(Point x, std::string label = "dirac");

// mu(B) for a Bowen ball. Product measures need a symbolic level; atomic
// measures work on any backend.
double ball_mass(const MeasureRep& mu, const NdSystem& sys,
                 const BowenBallSpec& ball);

// Finite-depth local pressure statistics at x: the values
// (S_n f(x) - log mu(B(x, n, eps))) / n over the tail depth grid, with the
// grid minimum standing in for the liminf and the maximum for the limsup.
struct LocalExponentReport {
  Point x;
  double eps = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<int> grid;
  std::vector<double> per_n;
  bool infinite = false;  // some ball had zero mass
};

LocalExponentReport local_exponents(const MeasureRep& mu, const NdSystem& sys,
                                    const PotentialSeq& f, const Point& x,
                                    int k, double eps, int n_min, int n_max);

enum class Side { Lower, Upper };

// Monte Carlo average of the chosen local statistic over mu-distributed
// samples, at the smallest radius of the schedule.
struct IntegratedExponent {
  double value = 0.0;
  double std_error = 0.0;
  int samples = 0;
  double excluded_fraction = 0.0;  // samples with zero-mass balls
};

IntegratedExponent integrated_exponent(const MeasureRep& mu,
                                       const NdSystem& sys,
                                       const PotentialSeq& f, int k,
                                       const EstimatorConfig& cfg, Side side);

Point sample_point(const MeasureRep& mu, const NdSystem& sys, int k,
                   std::mt19937_64& rng);

// Pushforward under a level map. Atomic measures map atom by atom; product
// measures support per-level symbol permutations.
MeasureRep pushforward(const MeasureRep& mu, const NdSystem& target, int k,
                       const std::function<Point(const Point&)>& pi);
MeasureRep permute_bernoulli(const MeasureRep& mu, const NdSystem& sys,
                             const std::vector<std::vector<int>>& perms);

}  // namespace nds
