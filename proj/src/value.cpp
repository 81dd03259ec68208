#include "nds/value.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "nds/net.hpp"
#include "nds/simplex.hpp"

namespace nds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Streaming log-sum-exp.
struct LogSum {
  double peak = -kInf;
  double scaled = 0.0;
  void add(double x) {
    if (x == -kInf) return;
    if (x <= peak) {
      scaled += std::exp(x - peak);
    } else {
      scaled = scaled * std::exp(peak - x) + 1.0;
      peak = x;
    }
  }
  double log() const { return scaled <= 0.0 ? -kInf : peak + std::log(scaled); }
};

std::int64_t saturating_mul(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0) return -1;
  if (a != 0 && b > std::numeric_limits<std::int64_t>::max() / a) return -1;
  return a * b;
}

std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0) return -1;
  if (a > std::numeric_limits<std::int64_t>::max() - b) return -1;
  return a + b;
}

bool is_prefix(const Word& p, const Word& w) {
  if (p.size() > w.size()) return false;
  return std::equal(p.begin(), p.end(), w.begin());
}

void check_depth_range(const NdSystem& sys, int k, int n) {
  if (n < 1) throw ConfigError("depth must be >= 1");
  if (k < 0 || k + n - 1 > sys.level_limit())
    throw LevelRangeError("depth exceeds available levels");
}

// ---------------------------------------------------------------------------
// Symbolic closed forms. With radius below 1 every depth-n ball is a depth-m
// cylinder with m >= n, so the Birkhoff sum is constant on each ball and the
// weighted count over the minimal cover (equivalently, the maximal packing)
// collapses to products of per-level sums.

struct SymbolicPlan {
  const SymbolicLevel* lv = nullptr;
  int m_raw = 0;
  int m = 0;  // clipped to the word length
  bool valid = false;
};

SymbolicPlan symbolic_plan(const NdSystem& sys, int k, int n, double eps,
                           bool closed) {
  SymbolicPlan plan;
  const SpaceLevel& lv = sys.level(k);
  if (lv.kind() != SpaceKind::SymbolicLevel) return plan;
  plan.lv = static_cast<const SymbolicLevel*>(&lv);
  plan.m_raw = symbolic_ball_depth(n, eps, closed);
  if (plan.m_raw < n)
    throw UnsupportedError(
        "symbolic values need radius < 1 (balls coarser than one symbol)");
  plan.m = std::min(plan.m_raw, plan.lv->word_len());
  plan.valid = true;
  return plan;
}

DepthValue symbolic_closed_form(const PotentialSeq& f,
                                const std::vector<Word>& parts, int k, int n,
                                const SymbolicPlan& plan) {
  const SymbolicLevel& lv = *plan.lv;
  int m = plan.m;
  DepthValue dv;
  dv.n = n;
  dv.m = m;
  dv.saturated = plan.m_raw >= lv.word_len();
  dv.count = 0;

  std::vector<double> lse(static_cast<std::size_t>(m));
  std::vector<double> lnm(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    int a = lv.alphabet(j);
    lnm[size_t(j)] = std::log(double(a));
    if (j < n) {
      LogSum acc;
      for (int sym = 0; sym < a; ++sym) acc.add(f.symbol_term(k + j, sym));
      lse[size_t(j)] = acc.log();
    }
  }

  LogSum total;
  std::set<Word> short_keys;  // parts at least as deep as the ball cylinder
  for (const Word& w0 : parts) {
    int p = int(w0.size());
    if (p >= m) {
      Word key(w0.begin(), w0.begin() + m);
      if (!short_keys.insert(key).second) continue;
      double t = 0.0;
      for (int j = 0; j < n; ++j) t += f.symbol_term(k + j, int(key[size_t(j)]));
      total.add(t);
      dv.count = saturating_add(dv.count, 1);
      continue;
    }
    double t = 0.0;
    for (int j = 0; j < std::min(p, n); ++j)
      t += f.symbol_term(k + j, int(w0[size_t(j)]));
    std::int64_t c = 1;
    for (int j = p; j < m; ++j) {
      t += j < n ? lse[size_t(j)] : lnm[size_t(j)];
      c = saturating_mul(c, lv.alphabet(j));
    }
    total.add(t);
    dv.count = saturating_add(dv.count, c);
  }
  dv.log_value = total.log();
  dv.exact = true;
  return dv;
}

// Explicit-point variant: group the words of Z by their ball cylinder.
DepthValue symbolic_enumerated(const NdSystem& sys, const PotentialSeq& f,
                               const std::vector<Point>& Z, int k, int n,
                               const SymbolicPlan& plan, WeightMode mode,
                               bool packing) {
  const SymbolicLevel& lv = *plan.lv;
  int m = plan.m;
  DepthValue dv;
  dv.n = n;
  dv.m = m;
  dv.saturated = plan.m_raw >= lv.word_len();

  std::map<Word, std::vector<const Point*>> groups;
  for (const Point& z : Z) {
    if (!lv.contains(z)) throw ConfigError("target point not in carrier");
    groups[Word(z.word.begin(), z.word.begin() + m)].push_back(&z);
  }
  LogSum total;
  bool exact = true;
  for (auto& [key, members] : groups) {
    double w;
    if (f.symbol_term) {
      w = 0.0;
      for (int j = 0; j < n; ++j) w += f.symbol_term(k + j, int(key[size_t(j)]));
    } else {
      // General potentials vary inside a cylinder; the group extremum is the
      // honest bound available without the full carrier.
      w = packing || mode == WeightMode::Sup ? -kInf : kInf;
      for (const Point* z : members) {
        double s = birkhoff_sum(sys, f, k, n, *z);
        w = packing || mode == WeightMode::Sup ? std::max(w, s)
                                               : std::min(w, s);
      }
      if (members.size() > 1) exact = false;
    }
    total.add(w);
  }
  dv.log_value = total.log();
  dv.count = std::int64_t(groups.size());
  dv.exact = exact;
  if (dv.count == std::int64_t(Z.size())) dv.saturated = true;
  return dv;
}

// ---------------------------------------------------------------------------
// Ordered one-dimensional sweeps (interval grids). The metrics are monotone
// in the index gap and the maps preserve order, so every ball is an index
// interval of uniform half-width per depth.

std::int64_t grid_extent(const NdSystem& sys, int k, int n, double eps,
                         bool closed) {
  const SpaceLevel& lv = sys.level(k);
  std::int64_t hi = lv.size() - 1;
  Point base = lv.point(0);
  auto inside = [&](std::int64_t d) {
    double dist = bowen_distance(sys, k, n, base, lv.point(d));
    return closed ? dist <= eps : dist < eps;
  };
  if (inside(hi)) return hi;
  std::int64_t lo = 0;
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    (inside(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::vector<std::int64_t> target_indices_1d(const SpaceLevel& lv,
                                            const TargetSet& Z) {
  if (!Z.cylinders.empty())
    throw ConfigError("cylinder targets need a symbolic level");
  std::vector<std::int64_t> idx;
  if (Z.full) {
    if (!lv.enumerable())
      throw UnsupportedError("carrier too large to enumerate");
    idx.resize(size_t(lv.size()));
    for (std::int64_t i = 0; i < lv.size(); ++i) idx[size_t(i)] = i;
    return idx;
  }
  idx.reserve(Z.points.size());
  for (const Point& p : Z.points) {
    if (!lv.contains(p)) throw ConfigError("target point not in carrier");
    idx.push_back(p.idx);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (idx.empty()) throw ConfigError("empty target set");
  return idx;
}

DepthValue grid_sweep(const NdSystem& sys, const PotentialSeq& f,
                      const TargetSet& Z, int n, double eps, bool packing) {
  const SpaceLevel& lv = sys.level(Z.k);
  auto idx = target_indices_1d(lv, Z);
  std::int64_t last = lv.size() - 1;
  std::int64_t ext = grid_extent(sys, Z.k, n, eps, packing);

  std::vector<std::int64_t> centers;
  if (!packing) {
    size_t i = 0;
    while (i < idx.size()) {
      std::int64_t c = std::min(idx[i] + ext, last);
      centers.push_back(c);
      std::int64_t reach = c + ext;
      while (i < idx.size() && idx[i] <= reach) ++i;
    }
  } else {
    std::int64_t next_free = std::numeric_limits<std::int64_t>::min();
    for (std::int64_t z : idx) {
      if (z < next_free) continue;
      centers.push_back(z);
      next_free = z + 2 * ext + 1;
    }
  }

  DepthValue dv;
  dv.n = n;
  dv.m = n;
  dv.count = std::int64_t(centers.size());
  dv.extent = ext;
  dv.saturated = ext == 0;
  dv.exact = f.constant_only;
  LogSum total;
  for (std::int64_t c : centers)
    total.add(birkhoff_sum(sys, f, Z.k, n, lv.point(c)));
  dv.log_value = total.log();
  return dv;
}

// ---------------------------------------------------------------------------
// Point-cloud sweeps. Balls need not be index intervals when the radius
// exceeds the branch gaps, so membership is explicit; contiguity is verified
// and recorded through the exact flag.

struct CloudRows {
  std::vector<std::vector<char>> in;  // carrier membership per center
  bool intervals = true;
};

CloudRows cloud_rows(const NdSystem& sys, int k, int n, double eps,
                     bool closed) {
  const SpaceLevel& lv = sys.level(k);
  std::int64_t sz = lv.size();
  std::vector<std::vector<double>> orb(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) orb[size_t(j)].resize(size_t(sz));
  for (std::int64_t i = 0; i < sz; ++i) {
    Point p = lv.point(i);
    for (int j = 0; j < n; ++j) {
      orb[size_t(j)][size_t(i)] = level_coordinate(sys.level(k + j), p);
      if (j + 1 < n) p = sys.apply(k + j, p);
    }
  }
  CloudRows rows;
  rows.in.assign(size_t(sz), std::vector<char>(size_t(sz), 0));
  for (std::int64_t c = 0; c < sz; ++c) {
    auto& row = rows.in[size_t(c)];
    for (std::int64_t y = 0; y < sz; ++y) {
      bool ok = true;
      for (int j = 0; j < n && ok; ++j) {
        double d = std::abs(orb[size_t(j)][size_t(c)] - orb[size_t(j)][size_t(y)]);
        ok = closed ? d <= eps : d < eps;
      }
      row[size_t(y)] = ok ? 1 : 0;
    }
    std::int64_t first = -1, lastm = -1;
    std::int64_t cnt = 0;
    for (std::int64_t y = 0; y < sz; ++y)
      if (row[size_t(y)]) {
        if (first < 0) first = y;
        lastm = y;
        ++cnt;
      }
    if (cnt != lastm - first + 1) rows.intervals = false;
  }
  return rows;
}

DepthValue cloud_sweep(const NdSystem& sys, const PotentialSeq& f,
                       const TargetSet& Z, int n, double eps, bool packing) {
  const SpaceLevel& lv = sys.level(Z.k);
  auto idx = target_indices_1d(lv, Z);
  CloudRows rows = cloud_rows(sys, Z.k, n, eps, packing);
  std::int64_t sz = lv.size();

  std::vector<std::int64_t> centers;
  if (!packing) {
    size_t pos = 0;
    while (pos < idx.size()) {
      std::int64_t want = idx[pos];
      std::int64_t best = -1;
      size_t best_reach = pos;
      for (std::int64_t c = 0; c < sz; ++c) {
        if (!rows.in[size_t(c)][size_t(want)]) continue;
        size_t q = pos;
        while (q < idx.size() && rows.in[size_t(c)][size_t(idx[q])]) ++q;
        if (best < 0 || q > best_reach) {
          best = c;
          best_reach = q;
        }
      }
      centers.push_back(best);
      pos = best_reach;
    }
  } else {
    std::vector<std::int64_t> last(size_t(sz), -1);
    for (std::int64_t c = 0; c < sz; ++c)
      for (std::int64_t y = 0; y < sz; ++y)
        if (rows.in[size_t(c)][size_t(y)]) last[size_t(c)] = y;
    std::vector<std::int64_t> order = idx;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::int64_t a, std::int64_t b) {
                       return last[size_t(a)] < last[size_t(b)];
                     });
    std::vector<char> used(size_t(sz), 0);
    for (std::int64_t c : order) {
      bool clash = false;
      for (std::int64_t y = 0; y < sz && !clash; ++y)
        if (rows.in[size_t(c)][size_t(y)] && used[size_t(y)]) clash = true;
      if (clash) continue;
      centers.push_back(c);
      for (std::int64_t y = 0; y < sz; ++y)
        if (rows.in[size_t(c)][size_t(y)]) used[size_t(y)] = 1;
    }
  }

  DepthValue dv;
  dv.n = n;
  dv.m = n;
  dv.count = std::int64_t(centers.size());
  dv.saturated = dv.count == std::int64_t(idx.size());
  dv.exact = rows.intervals && f.constant_only;
  LogSum total;
  for (std::int64_t c : centers)
    total.add(birkhoff_sum(sys, f, Z.k, n, lv.point(c)));
  dv.log_value = total.log();
  return dv;
}

std::vector<Word> target_parts(const TargetSet& Z) {
  if (Z.full) return {Word{}};
  return Z.cylinders;
}

void validate_cylinders(const std::vector<Word>& parts) {
  if (parts.empty()) throw ConfigError("empty target set");
  for (size_t i = 0; i < parts.size(); ++i)
    for (size_t j = 0; j < parts.size(); ++j)
      if (i != j && is_prefix(parts[i], parts[j]))
        throw ConfigError("cylinder targets must be pairwise non-nested");
}

DepthValue depth_value(const NdSystem& sys, const PotentialSeq& f,
                       const TargetSet& Z, int n, double eps, WeightMode mode,
                       bool packing) {
  check_depth_range(sys, Z.k, n);
  const SpaceLevel& lv = sys.level(Z.k);
  if (lv.kind() == SpaceKind::SymbolicLevel) {
    SymbolicPlan plan = symbolic_plan(sys, Z.k, n, eps, packing);
    bool cylinder_shape = Z.full || !Z.cylinders.empty();
    if (cylinder_shape && f.symbol_term) {
      auto parts = target_parts(Z);
      validate_cylinders(parts);
      for (const Word& w : parts)
        if (int(w.size()) > plan.lv->word_len())
          throw ConfigError("cylinder prefix longer than the level words");
      return symbolic_closed_form(f, parts, Z.k, n, plan);
    }
    auto pts = target_points(sys, Z);
    return symbolic_enumerated(sys, f, pts, Z.k, n, plan, mode, packing);
  }
  if (lv.kind() == SpaceKind::IntervalGrid)
    return grid_sweep(sys, f, Z, n, eps, packing);
  return cloud_sweep(sys, f, Z, n, eps, packing);
}

}  // namespace

TargetSet full_target(std::string label) {
  TargetSet z;
  z.label = std::move(label);
  return z;
}

TargetSet cylinder_target(std::vector<Word> prefixes, std::string label) {
  TargetSet z;
  z.full = false;
  z.cylinders = std::move(prefixes);
  z.label = label.empty() ? "cylinders(" + std::to_string(z.cylinders.size()) + ")"
                          : std::move(label);
  validate_cylinders(z.cylinders);
  return z;
}

TargetSet point_target(std::vector<Point> pts, std::string label) {
  if (pts.empty()) throw ConfigError("empty target set");
  TargetSet z;
  z.full = false;
  z.points = std::move(pts);
  z.label = std::move(label);
  return z;
}

std::vector<Point> target_points(const NdSystem& sys, const TargetSet& Z) {
  const SpaceLevel& lv = sys.level(Z.k);
  if (!Z.full && !Z.points.empty()) {
    for (const Point& p : Z.points)
      if (!lv.contains(p)) throw ConfigError("target point not in carrier");
    return Z.points;
  }
  if (!Z.full && !Z.cylinders.empty()) {
    if (lv.kind() != SpaceKind::SymbolicLevel)
      throw ConfigError("cylinder targets need a symbolic level");
    const auto& sl = static_cast<const SymbolicLevel&>(lv);
    validate_cylinders(Z.cylinders);
    std::vector<Point> out;
    for (const Word& w0 : Z.cylinders) {
      double words = 1;
      for (int j = int(w0.size()); j < sl.word_len(); ++j)
        words *= double(sl.alphabet(j));
      if (words > double(1 << 22))
        throw UnsupportedError("cylinder too large to enumerate");
      Word w = w0;
      w.resize(size_t(sl.word_len()), 0);
      std::function<void(int)> rec = [&](int j) {
        if (j == sl.word_len()) {
          out.push_back(word_point(w));
          return;
        }
        for (int a = 0; a < sl.alphabet(j); ++a) {
          w[size_t(j)] = std::uint8_t(a);
          rec(j + 1);
        }
      };
      rec(int(w0.size()));
    }
    return out;
  }
  if (!lv.enumerable())
    throw UnsupportedError("carrier too large to enumerate");
  std::vector<Point> out;
  out.reserve(size_t(lv.size()));
  for (std::int64_t i = 0; i < lv.size(); ++i) out.push_back(lv.point(i));
  return out;
}

int symbolic_ball_depth(int n, double eps, bool closed) {
  if (n < 1) throw ConfigError("depth must be >= 1");
  if (!(eps > 0.0)) throw ConfigError("radius must be positive");
  int q = 0;
  if (closed) {
    while (std::ldexp(1.0, -q) > eps) ++q;
  } else {
    while (!(std::ldexp(1.0, -q) < eps)) ++q;
  }
  return q == 0 ? 0 : n - 1 + q;
}

DepthValue depth_cover_value(const NdSystem& sys, const PotentialSeq& f,
                             const TargetSet& Z, int n, double eps,
                             WeightMode mode) {
  return depth_value(sys, f, Z, n, eps, mode, false);
}

DepthValue depth_packing_value(const NdSystem& sys, const PotentialSeq& f,
                               const TargetSet& Z, int n, double eps) {
  return depth_value(sys, f, Z, n, eps, WeightMode::Sup, true);
}

// ---------------------------------------------------------------------------
// Candidate families and the report-level value functions.

CandidateFamily build_candidate_family(const NdSystem& sys,
                                       const PotentialSeq& f,
                                       std::vector<Point> Z, int k, int N,
                                       int n_max, double eps, bool closed) {
  if (Z.empty()) throw ConfigError("empty target set");
  if (N < 1 || n_max < N) throw ConfigError("bad depth range");
  if (k + N - 1 > sys.level_limit())
    throw InfeasibleError("depth floor exceeds available levels");
  n_max = std::min(n_max, sys.level_limit() - k + 1);

  CandidateFamily fam;
  fam.Z = std::move(Z);
  fam.k = k;

  const SpaceLevel& lv = sys.level(k);
  std::vector<Point> carrier;
  if (lv.enumerable() && lv.size() <= (1 << 16)) {
    carrier.reserve(size_t(lv.size()));
    for (std::int64_t i = 0; i < lv.size(); ++i) carrier.push_back(lv.point(i));
  } else {
    fam.sup_over_carrier = false;
  }

  for (int n = N; n <= n_max; ++n) {
    NetReport net = separated_set(sys, fam.Z, k, n, eps);
    for (const Point& c : net.points) {
      CandidateBall ball;
      ball.spec = {k, c, n, eps, closed};
      for (size_t i = 0; i < fam.Z.size(); ++i) {
        double d = bowen_distance(sys, k, n, c, fam.Z[i]);
        if (closed ? d <= eps : d < eps) ball.members.push_back(int(i));
      }
      ball.log_weight_center = birkhoff_sum(sys, f, k, n, c);
      double sup = ball.log_weight_center;
      const auto& range = fam.sup_over_carrier ? carrier : fam.Z;
      for (const Point& y : range) {
        double d = bowen_distance(sys, k, n, c, y);
        if (closed ? d <= eps : d < eps)
          sup = std::max(sup, birkhoff_sum(sys, f, k, n, y));
      }
      ball.log_weight_sup = sup;
      fam.balls.push_back(std::move(ball));
    }
  }
  return fam;
}

namespace {

std::vector<double> family_weights(const CandidateFamily& fam, double s,
                                   bool sup) {
  std::vector<double> w;
  w.reserve(fam.balls.size());
  for (const auto& b : fam.balls)
    w.push_back(std::exp(-double(b.spec.n) * s +
                         (sup ? b.log_weight_sup : b.log_weight_center)));
  return w;
}

void check_feasible(const CandidateFamily& fam) {
  std::vector<char> hit(fam.Z.size(), 0);
  for (const auto& b : fam.balls)
    for (int i : b.members) hit[size_t(i)] = 1;
  for (size_t i = 0; i < fam.Z.size(); ++i)
    if (!hit[i])
      throw InfeasibleError(
          "no candidate ball covers the target at this radius; raise n_max");
}

// Exact minimum-weight set cover by branch and bound on the first uncovered
// element; candidate families stay tiny when exactness is requested.
void cover_branch(const CandidateFamily& fam, const std::vector<double>& w,
                  std::vector<char>& covered, size_t uncovered, double cost,
                  std::vector<int>& chosen, double& best,
                  std::vector<int>& best_set) {
  if (cost >= best) return;
  size_t z = 0;
  while (z < covered.size() && covered[z]) ++z;
  if (z == covered.size()) {
    best = cost;
    best_set = chosen;
    return;
  }
  (void)uncovered;
  for (size_t i = 0; i < fam.balls.size(); ++i) {
    const auto& mem = fam.balls[i].members;
    if (!std::binary_search(mem.begin(), mem.end(), int(z))) continue;
    std::vector<size_t> newly;
    for (int t : mem)
      if (!covered[size_t(t)]) {
        covered[size_t(t)] = 1;
        newly.push_back(size_t(t));
      }
    chosen.push_back(int(i));
    cover_branch(fam, w, covered, uncovered - newly.size(), cost + w[i], chosen,
                 best, best_set);
    chosen.pop_back();
    for (size_t t : newly) covered[t] = 0;
  }
}

std::vector<int> greedy_cover(const CandidateFamily& fam,
                              const std::vector<double>& w) {
  std::vector<char> covered(fam.Z.size(), 0);
  size_t left = fam.Z.size();
  std::vector<int> chosen;
  while (left > 0) {
    int best = -1;
    double best_ratio = kInf;
    for (size_t i = 0; i < fam.balls.size(); ++i) {
      int news = 0;
      for (int t : fam.balls[i].members)
        if (!covered[size_t(t)]) ++news;
      if (news == 0) continue;
      double ratio = w[i] / double(news);
      if (ratio < best_ratio) {
        best_ratio = ratio;
        best = int(i);
      }
    }
    chosen.push_back(best);
    for (int t : fam.balls[size_t(best)].members)
      if (!covered[size_t(t)]) {
        covered[size_t(t)] = 1;
        --left;
      }
  }
  // drop balls made redundant by later picks
  for (size_t c = 0; c < chosen.size();) {
    std::vector<int> counts(fam.Z.size(), 0);
    for (int i : chosen)
      for (int t : fam.balls[size_t(i)].members) ++counts[size_t(t)];
    bool redundant = true;
    for (int t : fam.balls[size_t(chosen[c])].members)
      if (counts[size_t(t)] < 2) redundant = false;
    if (redundant)
      chosen.erase(chosen.begin() + long(c));
    else
      ++c;
  }
  return chosen;
}

double cover_lp(const CandidateFamily& fam, const std::vector<double>& w,
                std::vector<double>* coeffs) {
  if (int(fam.balls.size()) > 2000)
    throw ConfigError("candidate family too large for the LP");
  LpProblem p;
  p.nvars = int(fam.balls.size());
  p.c = w;
  for (size_t z = 0; z < fam.Z.size(); ++z) {
    LpProblem::Row row;
    row.a.assign(fam.balls.size(), 0.0);
    for (size_t i = 0; i < fam.balls.size(); ++i)
      if (std::binary_search(fam.balls[i].members.begin(),
                             fam.balls[i].members.end(), int(z)))
        row.a[i] = 1.0;
    row.b = 1.0;
    row.rel = '>';
    p.rows.push_back(std::move(row));
  }
  LpResult res = solve_lp(p);
  if (res.status == LpResult::Status::Infeasible)
    throw InfeasibleError("cover relaxation infeasible");
  if (res.status != LpResult::Status::Optimal)
    throw ConfigError("cover relaxation did not converge");
  if (coeffs) *coeffs = res.x;
  return res.objective;
}

}  // namespace

CoverValueReport cover_value(const NdSystem& sys, const PotentialSeq& f,
                             const std::vector<Point>& Z, int k, double s,
                             int N, int n_max, double eps, CoverMode mode) {
  CandidateFamily fam =
      build_candidate_family(sys, f, Z, k, N, n_max, eps, false);
  check_feasible(fam);
  if (mode == CoverMode::Weighted)
    return weighted_cover_value(sys, f, Z, k, s, N, n_max, eps);

  CoverValueReport rep;
  rep.s = s;
  rep.N = N;
  rep.n_max = n_max;
  rep.eps = eps;
  rep.mode = mode;
  auto w = family_weights(fam, s, mode == CoverMode::SupWeight);

  std::vector<int> chosen;
  if (fam.balls.size() <= 24) {
    std::vector<char> covered(fam.Z.size(), 0);
    std::vector<int> stack;
    double best = kInf;
    cover_branch(fam, w, covered, fam.Z.size(), 0.0, stack, best, chosen);
    rep.upper_bound = best;
    rep.exact = true;
  } else {
    chosen = greedy_cover(fam, w);
    rep.upper_bound = 0.0;
    for (int i : chosen) rep.upper_bound += w[size_t(i)];
    rep.exact = false;
  }
  for (int i : chosen) rep.witness.push_back(fam.balls[size_t(i)].spec);
  rep.lower_bound = cover_lp(fam, w, nullptr);
  return rep;
}

CoverValueReport weighted_cover_value(const NdSystem& sys,
                                      const PotentialSeq& f,
                                      const std::vector<Point>& Z, int k,
                                      double s, int N, int n_max, double eps) {
  CandidateFamily fam =
      build_candidate_family(sys, f, Z, k, N, n_max, eps, false);
  check_feasible(fam);
  CoverValueReport rep;
  rep.s = s;
  rep.N = N;
  rep.n_max = n_max;
  rep.eps = eps;
  rep.mode = CoverMode::Weighted;
  auto w = family_weights(fam, s, true);
  std::vector<double> coeffs;
  double opt = cover_lp(fam, w, &coeffs);
  rep.lower_bound = opt;
  rep.upper_bound = opt;
  rep.exact = true;
  rep.witness_coeffs = std::move(coeffs);
  for (const auto& b : fam.balls) rep.witness.push_back(b.spec);
  return rep;
}

bool balls_disjoint(const NdSystem& sys, const BowenBallSpec& a,
                    const BowenBallSpec& b) {
  if (a.k != b.k) throw ConfigError("balls at different levels");
  const SpaceLevel& lv = sys.level(a.k);
  if (lv.kind() == SpaceKind::SymbolicLevel) {
    const auto& sl = static_cast<const SymbolicLevel&>(lv);
    int ma = std::min(symbolic_ball_depth(a.n, a.eps, a.closed), sl.word_len());
    int mb = std::min(symbolic_ball_depth(b.n, b.eps, b.closed), sl.word_len());
    int t = std::min(ma, mb);
    for (int j = 0; j < t; ++j)
      if (a.center.word[size_t(j)] != b.center.word[size_t(j)]) return true;
    return false;
  }
  if (lv.kind() == SpaceKind::IntervalGrid) {
    std::int64_t ea = grid_extent(sys, a.k, a.n, a.eps, a.closed);
    std::int64_t eb = grid_extent(sys, b.k, b.n, b.eps, b.closed);
    std::int64_t lo_a = a.center.idx - ea, hi_a = a.center.idx + ea;
    std::int64_t lo_b = b.center.idx - eb, hi_b = b.center.idx + eb;
    return hi_a < lo_b || hi_b < lo_a;
  }
  std::vector<Point> carrier;
  carrier.reserve(size_t(lv.size()));
  for (std::int64_t i = 0; i < lv.size(); ++i) carrier.push_back(lv.point(i));
  for (const Point& y : carrier) {
    double da = bowen_distance(sys, a.k, a.n, a.center, y);
    double db = bowen_distance(sys, b.k, b.n, b.center, y);
    bool ina = a.closed ? da <= a.eps : da < a.eps;
    bool inb = b.closed ? db <= b.eps : db < b.eps;
    if (ina && inb) return false;
  }
  return true;
}

PackingValueReport packing_value(const NdSystem& sys, const PotentialSeq& f,
                                 const std::vector<Point>& Z, int k, double s,
                                 int N, int n_max, double eps,
                                 std::vector<std::vector<int>> parts) {
  if (Z.empty()) throw ConfigError("empty target set");
  if (parts.empty()) {
    parts.emplace_back();
    for (size_t i = 0; i < Z.size(); ++i) parts.back().push_back(int(i));
  }
  PackingValueReport rep;
  rep.s = s;
  rep.N = N;
  rep.n_max = n_max;
  rep.eps = eps;
  int depth_hi = std::min(n_max, sys.level_limit() - k + 1);
  if (depth_hi < N)
    throw InfeasibleError("depth floor exceeds available levels");

  for (const auto& part : parts) {
    rep.part_sizes.push_back(part.size());
    std::vector<BowenBallSpec> cand;
    std::vector<double> w;
    for (int i : part)
      for (int n = N; n <= depth_hi; ++n) {
        BowenBallSpec spec{k, Z[size_t(i)], n, eps, true};
        cand.push_back(spec);
        w.push_back(std::exp(-double(n) * s +
                             birkhoff_sum(sys, f, k, n, Z[size_t(i)])));
      }
    std::vector<size_t> order(cand.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t x, size_t y) { return w[x] > w[y]; });
    std::vector<size_t> chosen;
    for (size_t i : order) {
      bool ok = true;
      for (size_t c : chosen)
        if (!balls_disjoint(sys, cand[i], cand[c])) {
          ok = false;
          break;
        }
      if (ok) chosen.push_back(i);
    }
    // pairwise swap: replace one pick by a heavier unused ball when the rest
    // stays disjoint
    bool moved = true;
    int rounds = 0;
    while (moved && rounds++ < 3) {
      moved = false;
      for (size_t i : order) {
        if (std::find(chosen.begin(), chosen.end(), i) != chosen.end())
          continue;
        for (size_t c = 0; c < chosen.size(); ++c) {
          if (w[i] <= w[chosen[c]]) continue;
          bool ok = true;
          for (size_t d = 0; d < chosen.size() && ok; ++d)
            if (d != c && !balls_disjoint(sys, cand[i], cand[chosen[d]]))
              ok = false;
          if (ok) {
            chosen[c] = i;
            moved = true;
            break;
          }
        }
      }
    }
    for (size_t c : chosen) {
      rep.value += w[c];
      rep.witness.push_back(cand[c]);
    }
  }
  return rep;
}

}  // namespace nds
