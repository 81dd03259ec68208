#include "nds/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace nds {

namespace {

class ShiftSystem final : public NdSystem {
 public:
  explicit ShiftSystem(ShiftSpec spec)
      : NdSystem(spec.label), spec_(std::move(spec)) {
    if (spec_.alphabet.empty()) throw ConfigError("shift needs alphabet sizes");
    for (int m : spec_.alphabet)
      if (m < 2) throw ConfigError("alphabet sizes must be >= 2");
    if (spec_.truncation < 2) throw ConfigError("truncation must be >= 2");
    levels_.resize(size_t(spec_.truncation));
  }

  int msize(int l) const {
    size_t n = spec_.alphabet.size();
    if (spec_.cycle) return spec_.alphabet[size_t(l) % n];
    return spec_.alphabet[std::min(size_t(l), n - 1)];
  }

  const SpaceLevel& level(int k) const override {
    if (k < 0 || k > level_limit()) throw LevelRangeError("shift level range");
    auto& slot = levels_[size_t(k)];
    if (!slot)
      slot = std::make_unique<SymbolicLevel>(
          k, spec_.truncation - k, [this](int l) { return msize(l); });
    return *slot;
  }

  int level_limit() const override { return spec_.truncation - 1; }

  Point apply(int k, const Point& x) const override {
    if (k < 0 || k >= level_limit()) throw LevelRangeError("shift map range");
    if (!level(k).contains(x)) throw ConfigError("point not in carrier");
    return word_point(Word(x.word.begin() + 1, x.word.end()));
  }

 private:
  ShiftSpec spec_;
  mutable std::vector<std::unique_ptr<SymbolicLevel>> levels_;
};

class DoublingSystem final : public NdSystem {
 public:
  explicit DoublingSystem(DoublingChainSpec spec)
      : NdSystem(spec.label), spec_(spec) {
    if (!(spec_.delta > 0.0) || spec_.delta > 0.5)
      throw ConfigError("grid spacing out of range");
    inv_ = std::llround(1.0 / spec_.delta);
    if (inv_ < 2) throw ConfigError("grid spacing out of range");
    if (spec_.levels < 1 || spec_.levels > 40)
      throw ConfigError("doubling chain levels out of range");
    levels_.resize(size_t(spec_.levels) + 1);
  }

  const SpaceLevel& level(int k) const override {
    if (k < 0 || k > level_limit())
      throw LevelRangeError("doubling level range");
    auto& slot = levels_[size_t(k)];
    if (!slot) {
      std::int64_t count = (std::int64_t(1) << k) * inv_ + 1;
      slot = std::make_unique<GridLevel>(k, count, 1.0 / double(inv_),
                                         spec_.metric);
    }
    return *slot;
  }

  int level_limit() const override { return spec_.levels; }

  Point apply(int k, const Point& x) const override {
    if (k < 0 || k >= level_limit())
      throw LevelRangeError("doubling map range");
    if (!level(k).contains(x)) throw ConfigError("point not in carrier");
    return grid_point(2 * x.idx);
  }

 private:
  DoublingChainSpec spec_;
  std::int64_t inv_ = 0;
  mutable std::vector<std::unique_ptr<GridLevel>> levels_;
};

class NifsSystem final : public NdSystem {
 public:
  NifsSystem(NifsSpec spec) : NdSystem(spec.label), spec_(std::move(spec)) {
    if (spec_.branches.empty()) throw ConfigError("nifs needs branch rows");
    if (spec_.depth < 2 || spec_.depth > 24)
      throw ConfigError("nifs depth out of range");
    for (auto& bs : spec_.branches) {
      if (bs.empty()) throw ConfigError("empty branch row");
      for (size_t i = 0; i < bs.size(); ++i) {
        auto [r, o] = bs[i];
        if (!(r > 0.0 && r < 1.0)) throw ConfigError("branch ratio in (0,1)");
        if (o < 0.0 || o + r > 1.0 + 1e-12)
          throw ConfigError("branch image leaves the unit interval");
        if (i > 0) {
          auto [rp, op] = bs[i - 1];
          if (o < op + rp + spec_.min_gap)
            throw OverlapError("branch images overlap or touch");
        }
      }
    }
    levels_.resize(size_t(spec_.depth));
    suffix_count_.assign(size_t(spec_.depth) + 1, 1);
    for (int k = spec_.depth - 1; k >= 0; --k) {
      std::int64_t c = suffix_count_[size_t(k) + 1] *
                       std::int64_t(row(k).size());
      if (c > (1 << 22)) throw ConfigError("nifs net too large");
      suffix_count_[size_t(k)] = c;
    }
  }

  const std::vector<std::pair<double, double>>& row(int r) const {
    size_t n = spec_.branches.size();
    if (spec_.cycle) return spec_.branches[size_t(r) % n];
    return spec_.branches[std::min(size_t(r), n - 1)];
  }

  const SpaceLevel& level(int k) const override {
    if (k < 0 || k > level_limit()) throw LevelRangeError("nifs level range");
    auto& slot = levels_[size_t(k)];
    if (!slot) {
      int q = spec_.depth - k;
      std::vector<double> vals;
      vals.reserve(size_t(suffix_count_[size_t(k)]));
      collect_values(k, 0, q, vals);
      double radius = 0.5;
      for (int j = 0; j < q; ++j) {
        double mx = 0.0;
        for (auto& [r, o] : row(k + j)) mx = std::max(mx, r);
        radius *= mx;
      }
      slot = std::make_unique<CloudLevel>(std::move(vals), radius);
    }
    return *slot;
  }

  int level_limit() const override { return spec_.depth - 1; }

  Point apply(int k, const Point& x) const override {
    if (k < 0 || k >= level_limit()) throw LevelRangeError("nifs map range");
    if (!level(k).contains(x)) throw ConfigError("point not in carrier");
    return grid_point(x.idx % suffix_count_[size_t(k) + 1]);
  }

  std::int64_t net_size(int k) const { return suffix_count_[size_t(k)]; }

 private:
  // Values of all depth-q branch words at level k, anchored at the midpoint
  // of the innermost interval; lexicographic branch order, which is also
  // ascending value order because rows are sorted and images disjoint.
  void collect_values(int k, int j, int q, std::vector<double>& out) const {
    if (j == q) {
      out.push_back(0.5);
      return;
    }
    std::vector<double> tails;
    collect_values(k, j + 1, q, tails);
    for (auto& [r, o] : row(k + j))
      for (double t : tails) out.push_back(o + r * t);
  }

  NifsSpec spec_;
  std::vector<std::int64_t> suffix_count_;
  mutable std::vector<std::unique_ptr<CloudLevel>> levels_;
};

}  // namespace

std::unique_ptr<NdSystem> make_na_shift(const ShiftSpec& spec) {
  return std::make_unique<ShiftSystem>(spec);
}

std::unique_ptr<NdSystem> make_doubling_chain(const DoublingChainSpec& spec) {
  return std::make_unique<DoublingSystem>(spec);
}

NifsRepeller make_nifs_repeller(const NifsSpec& spec) {
  NifsRepeller out;
  auto sys = std::make_unique<NifsSystem>(spec);
  const auto& lv0 = static_cast<const CloudLevel&>(sys->level(0));
  out.net = lv0.values();
  out.net_radius = lv0.resolution();
  out.system = std::move(sys);
  return out;
}

std::vector<int> geometric_blocks_alphabet(int length) {
  std::vector<int> m;
  m.reserve(size_t(length));
  int block = 0;
  std::int64_t run = 1;
  while (int(m.size()) < length) {
    int sz = (block % 2 == 0) ? 2 : 4;
    for (std::int64_t i = 0; i < run && int(m.size()) < length; ++i)
      m.push_back(sz);
    ++block;
    run *= 2;
  }
  return m;
}

BoxCountReport box_count_dimension(std::span<const double> values, double base,
                                   int m_lo, int m_hi) {
  BoxCountReport rep;
  if (values.empty() || m_hi < m_lo) throw ConfigError("box count input");
  std::vector<double> xs, ys;
  for (int m = m_lo; m <= m_hi; ++m) {
    double side = std::pow(base, -m);
    std::set<std::int64_t> boxes;
    for (double v : values)
      boxes.insert(std::int64_t(std::floor(v / side)));
    rep.counts.push_back(std::int64_t(boxes.size()));
    rep.log_scales.push_back(double(m) * std::log(base));
    xs.push_back(rep.log_scales.back());
    ys.push_back(std::log(double(boxes.size())));
  }
  double n = double(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  rep.dimension = denom > 0 ? (n * sxy - sx * sy) / denom : 0.0;
  return rep;
}

std::unique_ptr<NdSystem> make_shift_2(int truncation) {
  return make_na_shift({{2}, true, truncation, "shift_2"});
}

std::unique_ptr<NdSystem> make_shift_24(int truncation) {
  return make_na_shift({{2, 4}, true, truncation, "shift_24"});
}

std::unique_ptr<NdSystem> make_shift_blocks(int truncation) {
  ShiftSpec spec;
  spec.alphabet = geometric_blocks_alphabet(truncation);
  spec.cycle = false;
  spec.truncation = truncation;
  spec.label = "shift_blocks";
  return make_na_shift(spec);
}

NifsRepeller make_nifs_cantor(int depth) {
  NifsSpec spec;
  spec.branches = {{{1.0 / 3.0, 0.0}, {1.0 / 3.0, 2.0 / 3.0}}};
  spec.depth = depth;
  spec.label = "nifs_cantor";
  return make_nifs_repeller(spec);
}

NifsRepeller make_nifs_alt23(int depth) {
  NifsSpec spec;
  spec.branches = {{{0.25, 0.0}, {0.25, 0.75}},
                   {{0.25, 0.0}, {0.25, 0.375}, {0.25, 0.75}}};
  spec.depth = depth;
  spec.label = "nifs_alt23";
  return make_nifs_repeller(spec);
}

}  // namespace nds
