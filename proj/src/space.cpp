#include "nds/space.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nds/errors.hpp"

namespace nds {

SymbolicLevel::SymbolicLevel(int base_level, int word_len,
                             std::function<int(int)> msize)
    : base_level_(base_level), word_len_(word_len), msize_(std::move(msize)) {
  if (word_len_ < 1) throw ConfigError("symbolic level needs word_len >= 1");
  size_ = 1;
  for (int j = 0; j < word_len_; ++j) {
    int m = alphabet(j);
    if (m < 2) throw ConfigError("alphabet size must be >= 2");
    log_size_ += std::log(double(m));
    if (size_ >= 0) {
      if (size_ > (std::int64_t(1) << 56) / m)
        size_ = -1;
      else
        size_ *= m;
    }
  }
}

Point SymbolicLevel::point(std::int64_t i) const {
  if (!enumerable() || i < 0 || i >= size_)
    throw UnsupportedError("symbolic carrier not enumerable at this index");
  Word w(static_cast<std::size_t>(word_len_));
  std::int64_t rest = i;
  for (int j = word_len_ - 1; j >= 0; --j) {
    int m = alphabet(j);
    w[size_t(j)] = std::uint8_t(rest % m);
    rest /= m;
  }
  return word_point(std::move(w));
}

std::int64_t SymbolicLevel::rank(const Point& p) const {
  if (!enumerable()) throw UnsupportedError("symbolic carrier not enumerable");
  std::int64_t r = 0;
  for (int j = 0; j < word_len_; ++j) r = r * alphabet(j) + p.word[size_t(j)];
  return r;
}

double SymbolicLevel::metric(const Point& a, const Point& b) const {
  int n = word_len_;
  for (int j = 0; j < n; ++j) {
    if (a.word[size_t(j)] != b.word[size_t(j)]) return std::ldexp(1.0, -j);
  }
  return 0.0;
}

double SymbolicLevel::resolution() const {
  return std::ldexp(1.0, -word_len_);
}

bool SymbolicLevel::contains(const Point& p) const {
  if (int(p.word.size()) != word_len_) return false;
  for (int j = 0; j < word_len_; ++j)
    if (p.word[size_t(j)] >= alphabet(j)) return false;
  return true;
}

GridLevel::GridLevel(int level_k, std::int64_t count, double spacing,
                     GridMetric gm)
    : level_k_(level_k), count_(count), spacing_(spacing), gm_(gm) {
  if (count_ < 1 || spacing_ <= 0.0) throw ConfigError("bad grid level");
}

double GridLevel::metric_from_gap(double gap) const {
  switch (gm_) {
    case GridMetric::Euclidean:
      return gap;
    case GridMetric::Scaled:
      return std::ldexp(gap, -level_k_);
    case GridMetric::Bounded:
      return gap / (1.0 + gap);
  }
  return gap;
}

double GridLevel::metric(const Point& a, const Point& b) const {
  double gap = std::abs(double(a.idx - b.idx)) * spacing_;
  return metric_from_gap(gap);
}

double GridLevel::diameter() const {
  return metric_from_gap(double(count_ - 1) * spacing_);
}

CloudLevel::CloudLevel(std::vector<double> values, double resolution)
    : values_(std::move(values)), resolution_(resolution) {
  if (values_.empty()) throw ConfigError("empty point cloud");
  for (size_t i = 1; i < values_.size(); ++i)
    if (!(values_[i] > values_[i - 1]))
      throw ConfigError("point cloud values must be strictly increasing");
}

double CloudLevel::metric(const Point& a, const Point& b) const {
  return std::abs(values_[size_t(a.idx)] - values_[size_t(b.idx)]);
}

double CloudLevel::diameter() const { return values_.back() - values_.front(); }

double level_coordinate(const SpaceLevel& lv, const Point& p) {
  switch (lv.kind()) {
    case SpaceKind::IntervalGrid:
      return static_cast<const GridLevel&>(lv).coordinate(p);
    case SpaceKind::FinitePointCloud:
      return static_cast<const CloudLevel&>(lv).value(p);
    case SpaceKind::SymbolicLevel: {
      const auto& sl = static_cast<const SymbolicLevel&>(lv);
      double x = 0.0, unit = 1.0;
      for (int j = 0; j < sl.word_len(); ++j) {
        unit /= double(sl.alphabet(j));
        x += double(p.word[size_t(j)]) * unit;
      }
      return x;
    }
  }
  return 0.0;
}

namespace {

Point sample_point(const SpaceLevel& lv, std::mt19937_64& rng) {
  if (lv.kind() == SpaceKind::SymbolicLevel && !lv.enumerable()) {
    const auto& sl = static_cast<const SymbolicLevel&>(lv);
    Word w(size_t(sl.word_len()));
    for (int j = 0; j < sl.word_len(); ++j)
      w[size_t(j)] = std::uint8_t(rng() % std::uint64_t(sl.alphabet(j)));
    return word_point(std::move(w));
  }
  std::int64_t n = lv.size();
  return lv.point(std::int64_t(rng() % std::uint64_t(n)));
}

}  // namespace

void validate_metric(const SpaceLevel& lv, std::uint64_t seed, int triples) {
  std::mt19937_64 rng(seed);
  const double tol = 1e-12;
  for (int t = 0; t < triples; ++t) {
    Point x = sample_point(lv, rng);
    Point y = sample_point(lv, rng);
    Point z = sample_point(lv, rng);
    double dxy = lv.metric(x, y);
    double dyx = lv.metric(y, x);
    if (std::abs(dxy - dyx) > tol) throw ConfigError("metric not symmetric");
    if ((x == y) != (dxy == 0.0))
      throw ConfigError("metric zero iff points equal violated");
    if (lv.metric(x, z) > dxy + lv.metric(y, z) + tol)
      throw ConfigError("triangle inequality violated");
    if (dxy > lv.diameter() + tol) throw ConfigError("diameter exceeded");
  }
}

}  // namespace nds
