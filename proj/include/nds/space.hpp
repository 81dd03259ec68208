#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "nds/point.hpp"

namespace nds {

enum class SpaceKind { SymbolicLevel, IntervalGrid, FinitePointCloud };

enum class GridMetric { Euclidean, Scaled, Bounded };

// One compact carrier in the level sequence. Carriers are finite; points are
// enumerated in a fixed order that is compatible with the metric for the
// one-dimensional kinds (balls are index intervals there).
class SpaceLevel {
 public:
  virtual ~SpaceLevel() = default;

  virtual SpaceKind kind() const = 0;
  // Number of carrier points, or -1 when the carrier is too large to count in
  // 64 bits (possible for deep symbolic levels).
  virtual std::int64_t size() const = 0;
  virtual bool enumerable() const = 0;
  virtual Point point(std::int64_t i) const = 0;
  virtual double metric(const Point& a, const Point& b) const = 0;
  virtual double diameter() const = 0;
  // Finest distance the carrier can resolve (grid spacing, net radius, or the
  // deepest cylinder scale).
  virtual double resolution() const = 0;
  virtual bool contains(const Point& p) const = 0;
};

class SymbolicLevel final : public SpaceLevel {
 public:
  // msize(l) is the alphabet size at absolute level l; digit j of a word at
  // this level draws from alphabet base_level + j.
  SymbolicLevel(int base_level, int word_len, std::function<int(int)> msize);

  SpaceKind kind() const override { return SpaceKind::SymbolicLevel; }
  std::int64_t size() const override { return size_; }
  bool enumerable() const override { return size_ >= 0 && size_ <= (1 << 22); }
  Point point(std::int64_t i) const override;
  double metric(const Point& a, const Point& b) const override;
  double diameter() const override { return 1.0; }
  double resolution() const override;
  bool contains(const Point& p) const override;

  int word_len() const { return word_len_; }
  int alphabet(int digit) const { return msize_(base_level_ + digit); }
  double log_size() const { return log_size_; }
  std::int64_t rank(const Point& p) const;  // lexicographic, enumerable only

 private:
  int base_level_;
  int word_len_;
  std::function<int(int)> msize_;
  std::int64_t size_;      // -1 when the word count overflows
  double log_size_ = 0.0;  // natural log of the word count
};

class GridLevel final : public SpaceLevel {
 public:
  GridLevel(int level_k, std::int64_t count, double spacing, GridMetric gm);

  SpaceKind kind() const override { return SpaceKind::IntervalGrid; }
  std::int64_t size() const override { return count_; }
  bool enumerable() const override { return count_ <= (1 << 24); }
  Point point(std::int64_t i) const override { return grid_point(i); }
  double metric(const Point& a, const Point& b) const override;
  double diameter() const override;
  double resolution() const override { return spacing_; }
  bool contains(const Point& p) const override {
    return p.word.empty() && p.idx >= 0 && p.idx < count_;
  }

  double coordinate(const Point& p) const { return double(p.idx) * spacing_; }
  double spacing() const { return spacing_; }
  GridMetric grid_metric() const { return gm_; }
  int level_index() const { return level_k_; }
  // Distance as a function of coordinate separation; monotone increasing.
  double metric_from_gap(double gap) const;

 private:
  int level_k_;
  std::int64_t count_;
  double spacing_;
  GridMetric gm_;
};

class CloudLevel final : public SpaceLevel {
 public:
  // values must be strictly increasing; resolution is a certified radius such
  // that every point of the underlying set lies within it of some value.
  CloudLevel(std::vector<double> values, double resolution);

  SpaceKind kind() const override { return SpaceKind::FinitePointCloud; }
  std::int64_t size() const override { return std::int64_t(values_.size()); }
  bool enumerable() const override { return true; }
  Point point(std::int64_t i) const override { return grid_point(i); }
  double metric(const Point& a, const Point& b) const override;
  double diameter() const override;
  double resolution() const override { return resolution_; }
  bool contains(const Point& p) const override {
    return p.word.empty() && p.idx >= 0 && p.idx < std::int64_t(values_.size());
  }

  double value(const Point& p) const { return values_[size_t(p.idx)]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
  double resolution_;
};

// Coordinate of a point in the level's 1-d embedding (grid coordinate, cloud
// value, or the lexicographic fraction of a word). Used by sweep kernels.
double level_coordinate(const SpaceLevel& lv, const Point& p);

// Sampled metric-axiom check (symmetry, identity, triangle inequality) over a
// seeded choice of triples; throws ConfigError on violation.
void validate_metric(const SpaceLevel& lv, std::uint64_t seed, int triples);

}  // namespace nds
