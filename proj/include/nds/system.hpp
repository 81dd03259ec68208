#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nds/errors.hpp"
#include "nds/point.hpp"
#include "nds/space.hpp"

namespace nds {

// A sequence of compact finite carriers X_0, X_1, ... with maps
// T_k : X_k -> X_{k+1}. Levels are built lazily and cached by the concrete
// systems. All operations are pure; sharing a system across threads is safe
// once the levels in use have been touched.
class NdSystem {
 public:
  explicit NdSystem(std::string label) : label_(std::move(label)) {}
  virtual ~NdSystem() = default;

  const std::string& label() const { return label_; }
  virtual const SpaceLevel& level(int k) const = 0;
  virtual int level_limit() const = 0;  // levels 0..level_limit are defined
  virtual Point apply(int k, const Point& x) const = 0;
  // Additive metric slack introduced by one application of the map (grid
  // snapping); zero for systems whose maps land exactly on the carrier.
  virtual double snap_slack() const { return 0.0; }

 private:
  std::string label_;
};

struct BowenBallSpec {
  int k = 0;
  Point center;
  int n = 1;
  double eps = 1.0;
  bool closed = false;
};

void validate(const NdSystem& sys, const BowenBallSpec& b);

// Potential sequence f = {f_k : X_k -> R}.
struct PotentialSeq {
  std::string name = "zero";
  std::function<double(const NdSystem&, int, const Point&)> eval;
  std::optional<double> declared_norm;
  bool declared_unbounded = false;
  std::function<double(double)> modulus;  // eps -> delta; empty when unknown
  // Set when f_k(x) depends on the point only through its leading symbol
  // (symbolic levels). Enables closed-form level sums.
  std::function<double(int, int)> symbol_term;  // (absolute level, symbol)
  bool constant_only = false;

  double operator()(const NdSystem& sys, int k, const Point& x) const {
    return eval(sys, k, x);
  }
};

PotentialSeq zero_potential();
PotentialSeq constant_potential(double a);
// f_k(word) = value of the leading symbol, optionally remapped by table.
PotentialSeq symbol_value_potential(std::vector<double> table = {});
// f_k(x) = sin(coordinate) * 2^{-k} on grid/cloud levels.
PotentialSeq sin_decay_potential();
// f_k(x) = k (sampled potential used to exercise unbounded detection).
PotentialSeq level_index_potential();

// T_k^j, identity when j = 0. Throws LevelRangeError past level_limit.
Point compose(const NdSystem& sys, int k, int j, Point x);

// max_{0<=j<n} d_{k+j}(T^j x, T^j y)
double bowen_distance(const NdSystem& sys, int k, int n, const Point& x,
                      const Point& y);

// Points of `domain` inside the Bowen ball, computed from the running-max
// form of the distance.
std::vector<Point> bowen_ball_points(const NdSystem& sys,
                                     const BowenBallSpec& ball,
                                     std::span<const Point> domain);
// Same set computed by intersecting per-level preimage balls; the two must
// agree on every input.
std::vector<Point> bowen_ball_points_intersection(const NdSystem& sys,
                                                  const BowenBallSpec& ball,
                                                  std::span<const Point> domain);

// S_{k,n} f = sum_{j<n} f_{k+j}(T^j x)
double birkhoff_sum(const NdSystem& sys, const PotentialSeq& f, int k, int n,
                    const Point& x);

struct NormReport {
  bool unbounded = false;
  double value = 0.0;
  std::vector<double> level_maxima;  // per sampled level
};

// sup_k max_x |f_k(x)| sampled over a doubling level schedule.
NormReport potential_norm(const NdSystem& sys, const PotentialSeq& f,
                          int level_cap = -1);

struct ModulusReport {
  bool ok = false;
  double delta = 0.0;
};

// Largest sampled delta such that every sampled pair with d(x,y) <= delta has
// |f_k(x) - f_k(y)| < eps, uniformly over sampled levels.
ModulusReport equicontinuity_modulus(const NdSystem& sys,
                                     const PotentialSeq& f, double eps,
                                     int level_cap = -1);

// Same search for a family of level maps pi_k : X_k -> Y_k.
ModulusReport equicontinuity_modulus_maps(
    const NdSystem& from, const NdSystem& to,
    const std::function<Point(int, const Point&)>& pi, double eps,
    int level_cap = -1);

std::vector<int> doubling_level_schedule(int limit);

}  // namespace nds
